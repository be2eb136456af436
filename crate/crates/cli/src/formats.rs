//! Text formats for polytope and ansatz descriptions. Exact rationals are
//! written `p/q`; parse errors carry line numbers.

use anyhow::{anyhow, bail, Context, Result};
use twins_core::polytope::{AffineFunc, MomentPolytope};
use twins_core::quad::{
    calabi_fit, ortho_fit, product_fit, CalabiAnsatz, DegreeCap, FitOutcome, OrthotoricAnsatz,
    ProductAnsatz, QuadLabels, QuadParams, ToricAnsatz,
};
use twins_core::{parse_rat, Rat, RatPoly};

/// Parsed polytope description.
#[derive(Clone, Debug)]
pub struct PolytopeFile {
    pub polytope: MomentPolytope,
    pub lattice_note: Option<String>,
}

/// Parse the polytope format:
///
/// ```text
/// dimension: 2
/// vertices:
/// -1 0
/// 0 -1
/// labels:        (optional; rows `a1 .. ad c` for l(x) = <a, x> + c)
/// 1 0 1
/// lattice: note  (optional)
/// ```
pub fn parse_polytope(text: &str) -> Result<PolytopeFile> {
    let mut dimension: Option<usize> = None;
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut labels: Vec<AffineFunc> = Vec::new();
    let mut lattice_note = None;
    #[derive(PartialEq)]
    enum Section {
        None,
        Vertices,
        Labels,
    }
    let mut section = Section::None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let at = |msg: &str| anyhow!("line {}: {msg}", lineno + 1);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dimension:") {
            dimension = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| at("bad dimension value"))?,
            );
            section = Section::None;
            continue;
        }
        if line == "vertices:" {
            section = Section::Vertices;
            continue;
        }
        if line == "labels:" {
            section = Section::Labels;
            continue;
        }
        if let Some(rest) = line.strip_prefix("lattice:") {
            lattice_note = Some(rest.trim().to_string());
            section = Section::None;
            continue;
        }
        let dim = dimension.ok_or_else(|| at("dimension must come first"))?;
        let values: Vec<Rat> = line
            .split_whitespace()
            .map(|tok| parse_rat(tok).map_err(|e| at(&e)))
            .collect::<Result<_>>()?;
        match section {
            Section::Vertices => {
                if values.len() != dim {
                    bail!(at(&format!("expected {dim} vertex coordinates")));
                }
                vertices.push(values);
            }
            Section::Labels => {
                if values.len() != dim + 1 {
                    bail!(at(&format!("expected {} label coefficients", dim + 1)));
                }
                let constant = values[dim].clone();
                labels.push(AffineFunc::new(values[..dim].to_vec(), constant));
            }
            Section::None => bail!(at("data outside a section")),
        }
    }
    let dim = dimension.context("missing dimension")?;
    let polytope = match dim {
        2 => MomentPolytope::new_2d(vertices).map_err(|e| anyhow!("{e}"))?,
        n if vertices.len() == n + 1 && !vertices.is_empty() => {
            // sanity: accept simplex data by matching the standard model
            let standard = MomentPolytope::simplex(n);
            if normalized_vertex_set(&vertices) != normalized_vertex_set(standard.vertices()) {
                bail!("only two-dimensional polytopes or the standard simplex are supported");
            }
            standard
        }
        _ => bail!("only two-dimensional polytopes or the standard simplex are supported"),
    };
    let polytope = if labels.is_empty() {
        polytope
    } else {
        polytope.with_labels(labels).map_err(|e| anyhow!("{e}"))?
    };
    Ok(PolytopeFile {
        polytope,
        lattice_note,
    })
}

fn normalized_vertex_set(vs: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut out = vs.to_vec();
    out.sort();
    out
}

/// Parsed ansatz description.
#[derive(Clone, Debug)]
pub struct AnsatzFile {
    pub ansatz: FitOutcome<ToricAnsatz>,
}

/// Parse the ansatz format:
///
/// ```text
/// type: calabi | orthotoric | product
/// alpha1: 1
/// alpha2: 2
/// beta1: 0
/// beta2: 1
/// c_alpha1: 1        (labels; optional when A and B are explicit)
/// c_alpha2: -1/4
/// c_beta1: -2/35
/// c_beta2: 2/35
/// degree_cap: 3      (product only, 3 or 4)
/// A: 0 1 -3/2        (optional explicit ascending coefficients)
/// B: 0 2 -1
/// ```
pub fn parse_ansatz(text: &str) -> Result<AnsatzFile> {
    let mut kind: Option<String> = None;
    let mut fields: std::collections::BTreeMap<String, String> = Default::default();
    let mut poly_a: Option<RatPoly> = None;
    let mut poly_b: Option<RatPoly> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let at = |msg: &str| anyhow!("line {}: {msg}", lineno + 1);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| at("expected `key: value`"))?;
        let key = key.trim().to_ascii_lowercase();
        let value = value.trim();
        match key.as_str() {
            "type" => kind = Some(value.to_ascii_lowercase()),
            "a" | "b" => {
                let coeffs: Vec<Rat> = value
                    .split_whitespace()
                    .map(|tok| parse_rat(tok).map_err(|e| at(&e)))
                    .collect::<Result<_>>()?;
                let poly = RatPoly::new(coeffs);
                if key == "a" {
                    poly_a = Some(poly);
                } else {
                    poly_b = Some(poly);
                }
            }
            _ => {
                fields.insert(key, value.to_string());
            }
        }
    }
    let kind = kind.context("missing `type:` field")?;
    let get = |name: &str| -> Result<Rat> {
        let raw = fields
            .get(name)
            .ok_or_else(|| anyhow!("missing `{name}:` field"))?;
        parse_rat(raw).map_err(|e| anyhow!("field {name}: {e}"))
    };
    let params = QuadParams::new(get("alpha1")?, get("alpha2")?, get("beta1")?, get("beta2")?);
    let explicit = poly_a.is_some() || poly_b.is_some();
    let labels = if explicit {
        None
    } else {
        Some(QuadLabels::new(
            get("c_alpha1")?,
            get("c_alpha2")?,
            get("c_beta1")?,
            get("c_beta2")?,
        ))
    };
    let ansatz = match kind.as_str() {
        "calabi" => {
            if explicit {
                let a = poly_a.context("explicit profile needs both A and B")?;
                let b = poly_b.context("explicit profile needs both A and B")?;
                FitOutcome::Fitted(ToricAnsatz::Calabi(
                    CalabiAnsatz::from_polys(&params, a, b).map_err(|e| anyhow!("{e}"))?,
                ))
            } else {
                FitOutcome::Fitted(ToricAnsatz::Calabi(
                    calabi_fit(&params, labels.as_ref().unwrap()).map_err(|e| anyhow!("{e}"))?,
                ))
            }
        }
        "orthotoric" => {
            if explicit {
                let a = poly_a.context("explicit profile needs both A and B")?;
                let b = poly_b.context("explicit profile needs both A and B")?;
                FitOutcome::Fitted(ToricAnsatz::Orthotoric(
                    OrthotoricAnsatz::from_polys(&params, a, b).map_err(|e| anyhow!("{e}"))?,
                ))
            } else {
                match ortho_fit(&params, labels.as_ref().unwrap()).map_err(|e| anyhow!("{e}"))? {
                    FitOutcome::Fitted(a) => FitOutcome::Fitted(ToricAnsatz::Orthotoric(a)),
                    FitOutcome::Infeasible => FitOutcome::Infeasible,
                }
            }
        }
        "product" => {
            if explicit {
                let a = poly_a.context("explicit profile needs both A and B")?;
                let b = poly_b.context("explicit profile needs both A and B")?;
                FitOutcome::Fitted(ToricAnsatz::Product(
                    ProductAnsatz::from_polys(&params, a, b).map_err(|e| anyhow!("{e}"))?,
                ))
            } else {
                let cap = match fields.get("degree_cap").map(String::as_str) {
                    None | Some("3") => DegreeCap::Cubic,
                    Some("4") => DegreeCap::Quartic,
                    Some(other) => bail!("degree_cap must be 3 or 4, got {other}"),
                };
                FitOutcome::Fitted(ToricAnsatz::Product(
                    product_fit(&params, labels.as_ref().unwrap(), cap)
                        .map_err(|e| anyhow!("{e}"))?,
                ))
            }
        }
        other => bail!("unknown ansatz type `{other}`"),
    };
    Ok(AnsatzFile { ansatz })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_roundtrip() {
        let text = "# hexagon\ndimension: 2\nvertices:\n-1 0\n0 -1\n-1 1\n0 1\n1 0\n1 -1\n";
        let parsed = parse_polytope(text).unwrap();
        assert_eq!(parsed.polytope.vertices().len(), 6);
        assert!(parsed.lattice_note.is_none());
    }

    #[test]
    fn polytope_parse_errors_carry_lines() {
        let err = parse_polytope("dimension: 2\nvertices:\n1 oops\n").unwrap_err();
        assert!(err.to_string().contains("line 3"));
        let err = parse_polytope("vertices:\n1 2\n").unwrap_err();
        assert!(err.to_string().contains("dimension"));
    }

    #[test]
    fn ansatz_fit_from_labels() {
        let text = "type: calabi\nalpha1: 1\nalpha2: 2\nbeta1: 0\nbeta2: 1\n\
                    c_alpha1: 1\nc_alpha2: -1/4\nc_beta1: -2/11\nc_beta2: 2/11\n";
        let parsed = parse_ansatz(text).unwrap();
        match parsed.ansatz {
            FitOutcome::Fitted(ToricAnsatz::Calabi(a)) => {
                assert!(a.positive_a && a.positive_b);
            }
            other => panic!("expected a trapezoid fit, got {other:?}"),
        }
    }

    #[test]
    fn ansatz_explicit_polynomials() {
        // round product profiles on [-1,1] x [-1,1]
        let text = "type: product\nalpha1: -1\nalpha2: 1\nbeta1: -1\nbeta2: 1\n\
                    A: 1 0 -1\nB: 1 0 -1\n";
        let parsed = parse_ansatz(text).unwrap();
        match parsed.ansatz {
            FitOutcome::Fitted(ToricAnsatz::Product(p)) => {
                assert_eq!(p.labels.c_alpha1, twins_core::rati(1));
            }
            other => panic!("expected explicit product data, got {other:?}"),
        }
    }
}
