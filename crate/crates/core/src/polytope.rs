//! Moment polytopes: barycentric corner frames, the per-vertex quadratic
//! twin obstruction, exact classification of two-dimensional systems, the
//! simplex model with its inverse-Hessian grid, and the line/quadric
//! property of constant-scalar ray families.

use crate::matrix::Matrix;
use crate::multipoly::MultiPoly;
use crate::value::{isolate_params_in, ParamValue};
use crate::{rat, rati, Rat, RatMPoly, RatMatrix, RatPoly};
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum PolytopeError {
    TooFewVertices,
    NotExtreme { vertex: usize },
    DegenerateFrame,
    NotACorner,
    Dimension(&'static str),
    LabelMismatch(&'static str),
    NotPositive(&'static str),
    Internal(&'static str),
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::TooFewVertices => write!(f, "too few vertices"),
            PolytopeError::NotExtreme { vertex } => {
                write!(f, "vertex {vertex} is not an extreme point")
            }
            PolytopeError::DegenerateFrame => write!(f, "corner frame is affinely degenerate"),
            PolytopeError::NotACorner => write!(f, "frame segments are not edges"),
            PolytopeError::Dimension(what) => write!(f, "dimension error: {what}"),
            PolytopeError::LabelMismatch(what) => write!(f, "label mismatch: {what}"),
            PolytopeError::NotPositive(what) => write!(f, "positivity violated: {what}"),
            PolytopeError::Internal(what) => write!(f, "internal check failed: {what}"),
        }
    }
}

impl std::error::Error for PolytopeError {}

type Result<T> = std::result::Result<T, PolytopeError>;

/// Affine function `l(x) = <linear, x> + constant`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFunc {
    pub linear: Vec<Rat>,
    pub constant: Rat,
}

impl AffineFunc {
    pub fn new(linear: Vec<Rat>, constant: Rat) -> Self {
        AffineFunc { linear, constant }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = self.constant.clone();
        for (a, x) in self.linear.iter().zip(point) {
            acc += a * x;
        }
        acc
    }

    pub fn as_mpoly(&self, nvars: usize) -> RatMPoly {
        let mut p = MultiPoly::constant(nvars, self.constant.clone());
        for (i, a) in self.linear.iter().enumerate() {
            p = &p + &MultiPoly::var(nvars, i).scale(a);
        }
        p
    }
}

/// A compact moment polytope given by its vertices, with optional facet
/// labels. Two-dimensional polytopes carry their hull adjacency so corner
/// frames can be validated.
#[derive(Clone, Debug)]
pub struct MomentPolytope {
    dim: usize,
    vertices: Vec<Vec<Rat>>,
    labels: Option<Vec<AffineFunc>>,
    /// Cyclic hull order of vertex indices (two-dimensional polytopes).
    hull: Option<Vec<usize>>,
}

fn cross2(o: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

impl MomentPolytope {
    /// A two-dimensional polytope; every given vertex must be an extreme
    /// point of the hull.
    pub fn new_2d(vertices: Vec<Vec<Rat>>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(PolytopeError::TooFewVertices);
        }
        if vertices.iter().any(|v| v.len() != 2) {
            return Err(PolytopeError::Dimension("vertices must be planar"));
        }
        // monotone chain on indices sorted lexicographically
        let mut idx: Vec<usize> = (0..vertices.len()).collect();
        idx.sort_by(|&i, &j| vertices[i].cmp(&vertices[j]));
        if idx.windows(2).any(|w| vertices[w[0]] == vertices[w[1]]) {
            return Err(PolytopeError::NotExtreme { vertex: idx[1] });
        }
        let mut lower: Vec<usize> = Vec::new();
        for &i in &idx {
            while lower.len() >= 2
                && !cross2(
                    &vertices[lower[lower.len() - 2]],
                    &vertices[lower[lower.len() - 1]],
                    &vertices[i],
                )
                .is_positive()
            {
                lower.pop();
            }
            lower.push(i);
        }
        let mut upper: Vec<usize> = Vec::new();
        for &i in idx.iter().rev() {
            while upper.len() >= 2
                && !cross2(
                    &vertices[upper[upper.len() - 2]],
                    &vertices[upper[upper.len() - 1]],
                    &vertices[i],
                )
                .is_positive()
            {
                upper.pop();
            }
            upper.push(i);
        }
        lower.pop();
        upper.pop();
        let hull: Vec<usize> = lower.into_iter().chain(upper).collect();
        if hull.len() != vertices.len() {
            let missing = (0..vertices.len()).find(|i| !hull.contains(i)).unwrap_or(0);
            return Err(PolytopeError::NotExtreme { vertex: missing });
        }
        Ok(MomentPolytope {
            dim: 2,
            vertices,
            labels: None,
            hull: Some(hull),
        })
    }

    /// Attach facet labels; the labeled region must reproduce the hull:
    /// every vertex is nonnegative on every label and lies on at least
    /// `dim` facets, and every facet carries at least `dim` vertices.
    pub fn with_labels(mut self, labels: Vec<AffineFunc>) -> Result<Self> {
        for l in &labels {
            if l.dim() != self.dim {
                return Err(PolytopeError::LabelMismatch("label arity"));
            }
        }
        for v in self.vertices.iter() {
            let mut on = 0;
            for l in &labels {
                let value = l.eval(v);
                if value.is_negative() {
                    return Err(PolytopeError::LabelMismatch(
                        "vertex outside labeled region",
                    ));
                }
                if value.is_zero() {
                    on += 1;
                }
            }
            if on < self.dim {
                return Err(PolytopeError::LabelMismatch("vertex not on enough facets"));
            }
        }
        for l in &labels {
            let count = self.vertices.iter().filter(|v| l.eval(v).is_zero()).count();
            if count < self.dim {
                return Err(PolytopeError::LabelMismatch("facet with too few vertices"));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The standard simplex model in dimension `n`: labels
    /// `l_0 = 1 - x_1 - ... - x_n`, `l_i = 1 + x_i`.
    pub fn simplex(n: usize) -> Self {
        assert!(n >= 1);
        let mut vertices = vec![vec![rati(-1); n]];
        for j in 0..n {
            let mut v = vec![rati(-1); n];
            v[j] = rati(n as i64);
            vertices.push(v);
        }
        let mut labels = vec![AffineFunc::new(vec![rati(-1); n], rati(1))];
        for i in 0..n {
            let mut lin = vec![rati(0); n];
            lin[i] = rati(1);
            labels.push(AffineFunc::new(lin, rati(1)));
        }
        MomentPolytope {
            dim: n,
            vertices,
            labels: Some(labels),
            hull: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn labels(&self) -> Option<&[AffineFunc]> {
        self.labels.as_deref()
    }

    pub fn hull_neighbors(&self, v: usize) -> Option<(usize, usize)> {
        let hull = self.hull.as_ref()?;
        let pos = hull.iter().position(|&i| i == v)?;
        let n = hull.len();
        Some((hull[(pos + n - 1) % n], hull[(pos + 1) % n]))
    }

    fn is_edge(&self, a: usize, b: usize) -> bool {
        if self.vertices.len() == self.dim + 1 {
            // every segment of a simplex is an edge
            return a != b;
        }
        match self.hull_neighbors(a) {
            Some((p, q)) => p == b || q == b,
            None => false,
        }
    }

    /// Deterministic corner: the lexicographically smallest vertex with its
    /// edge neighbors, ordered lexicographically (all vertices for a
    /// simplex).
    pub fn lex_corner(&self) -> Result<CornerFrame> {
        if self.vertices.len() == self.dim + 1 {
            let mut base: Vec<usize> = (0..self.vertices.len()).collect();
            base.sort_by(|&i, &j| self.vertices[i].cmp(&self.vertices[j]));
            return CornerFrame::new(self, base);
        }
        let p0 = (0..self.vertices.len())
            .min_by(|&i, &j| self.vertices[i].cmp(&self.vertices[j]))
            .ok_or(PolytopeError::TooFewVertices)?;
        let (u, v) = self
            .hull_neighbors(p0)
            .ok_or(PolytopeError::Dimension("corner selection needs 2d hull"))?;
        let mut rest = [u, v];
        rest.sort_by(|&i, &j| self.vertices[i].cmp(&self.vertices[j]));
        CornerFrame::new(self, vec![p0, rest[0], rest[1]])
    }
}

/// `k + 1` vertex indices forming a corner: every segment from the base
/// vertex to another frame vertex is an edge, and the differences are
/// affinely independent.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerFrame {
    base: Vec<usize>,
}

impl CornerFrame {
    pub fn new(poly: &MomentPolytope, base: Vec<usize>) -> Result<Self> {
        if base.len() != poly.dim + 1 {
            return Err(PolytopeError::Dimension("frame needs dim + 1 vertices"));
        }
        for &i in &base {
            if i >= poly.vertices.len() {
                return Err(PolytopeError::Dimension("frame index out of range"));
            }
        }
        for &i in &base[1..] {
            if !poly.is_edge(base[0], i) {
                return Err(PolytopeError::NotACorner);
            }
        }
        // affine independence: the barycentric matrix must be nonsingular
        let m = barycentric_matrix(poly, &base);
        if m.determinant().map(|d| d.is_zero()).unwrap_or(true) {
            return Err(PolytopeError::DegenerateFrame);
        }
        Ok(CornerFrame { base })
    }

    pub fn indices(&self) -> &[usize] {
        &self.base
    }

    pub fn contains(&self, v: usize) -> bool {
        self.base.contains(&v)
    }
}

fn barycentric_matrix(poly: &MomentPolytope, base: &[usize]) -> RatMatrix {
    let k = poly.dim;
    let mut rows = vec![vec![rati(1); k + 1]];
    for d in 0..k {
        rows.push(base.iter().map(|&i| poly.vertices[i][d].clone()).collect());
    }
    Matrix::from_rows(rows)
}

/// Barycentric coordinates of a vertex in a corner frame: `sum alpha_i = 1`
/// and `sum alpha_i p_i` reproduces the vertex, both exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct BarycentricVertex {
    pub vertex: usize,
    pub coords: Vec<Rat>,
}

pub fn barycentric_coords(
    poly: &MomentPolytope,
    frame: &CornerFrame,
    vertex: usize,
) -> Result<BarycentricVertex> {
    if vertex >= poly.vertices.len() {
        return Err(PolytopeError::Dimension("vertex index out of range"));
    }
    let m = barycentric_matrix(poly, &frame.base);
    let mut rhs = vec![rati(1)];
    rhs.extend(poly.vertices[vertex].iter().cloned());
    let coords = m.solve(&rhs).map_err(|_| PolytopeError::DegenerateFrame)?;
    Ok(BarycentricVertex { vertex, coords })
}

/// Reduced per-vertex residual in the differences `u_i = w_i - w_0`:
/// `sum_i alpha_i u_i^2 - (sum_i alpha_i u_i)^2`.
pub fn vertex_twin_residual(alpha: &BarycentricVertex, w: &[Rat]) -> Rat {
    let k = alpha.coords.len() - 1;
    assert_eq!(w.len(), k + 1, "weight arity");
    let mut quad = Rat::zero();
    let mut lin = Rat::zero();
    for i in 1..=k {
        let u = &w[i] - &w[0];
        quad += &alpha.coords[i] * &u * &u;
        lin += &alpha.coords[i] * &u;
    }
    quad - &lin * &lin
}

/// Unreduced form `sum_i alpha_i w_i^2 - (sum_i alpha_i w_i)^2` over all
/// frame indices; equal to the reduced form whenever `sum alpha_i = 1`.
pub fn vertex_twin_residual_full(alpha: &BarycentricVertex, w: &[Rat]) -> Rat {
    let mut quad = Rat::zero();
    let mut lin = Rat::zero();
    for (a, wi) in alpha.coords.iter().zip(w) {
        quad += a * wi * wi;
        lin += a * wi;
    }
    quad - &lin * &lin
}

/// One homogeneous quadratic equation per non-base vertex, in the
/// difference variables `u_1, ..., u_k`.
#[derive(Clone, Debug)]
pub struct TwinVertexSystem {
    pub k: usize,
    /// `(vertex index, equation)` pairs.
    pub equations: Vec<(usize, RatMPoly)>,
}

pub fn build_twin_system(poly: &MomentPolytope, frame: &CornerFrame) -> Result<TwinVertexSystem> {
    let k = poly.dim;
    let mut equations = Vec::new();
    for v in 0..poly.vertices.len() {
        if frame.contains(v) {
            continue;
        }
        let alpha = barycentric_coords(poly, frame, v)?;
        let mut quad = MultiPoly::zero(k);
        let mut lin = MultiPoly::zero(k);
        for i in 1..=k {
            let u = MultiPoly::var(k, i - 1);
            quad = &quad + &(&u * &u).scale(&alpha.coords[i]);
            lin = &lin + &u.scale(&alpha.coords[i]);
        }
        let eq = &quad - &(&lin * &lin);
        equations.push((v, eq));
    }
    Ok(TwinVertexSystem { k, equations })
}

/// A line through the origin of the difference plane `(u_1, u_2)`.
#[derive(Clone, Debug)]
pub enum TwinLine {
    /// `u_1 = 0`, i.e. only `w_2` moves off the diagonal.
    Vertical,
    /// `u_2 = m u_1` for the given certified slope.
    Slope(ParamValue),
}

/// Exact classification of a two-dimensional twin-vertex system.
#[derive(Clone, Debug)]
pub enum TwinSystemClass {
    /// No constraints: every potential solves the system.
    FullSpace,
    /// Only the diagonal `w_0 = w_1 = w_2` survives: no twin.
    OnlyDiagonal,
    /// The common zero set is a union of lines through the diagonal.
    UnionOfLines(Vec<TwinLine>),
    /// Not produced by quadratic vertex systems; kept so callers can match
    /// exhaustively on future extensions.
    CurveSamples(Vec<(Rat, Rat)>),
}

pub fn solve_twin_system_2d(sys: &TwinVertexSystem) -> Result<TwinSystemClass> {
    if sys.k != 2 {
        return Err(PolytopeError::Dimension(
            "classification only implemented for two unknowns",
        ));
    }
    // each equation is A u1^2 + B u1 u2 + C u2^2
    let mut dehom: Vec<RatPoly> = Vec::new();
    let mut vertical = true;
    let mut all_zero = true;
    for (_, eq) in &sys.equations {
        if eq.is_zero() {
            continue;
        }
        all_zero = false;
        let a = eq.coeff(&[2, 0]);
        let b = eq.coeff(&[1, 1]);
        let c = eq.coeff(&[0, 2]);
        if !c.is_zero() {
            vertical = false;
        }
        dehom.push(RatPoly::new(vec![a, b, c]));
    }
    if all_zero {
        return Ok(TwinSystemClass::FullSpace);
    }
    let mut g = dehom[0].clone();
    for q in &dehom[1..] {
        g = g.gcd(q);
    }
    let mut lines: Vec<TwinLine> = Vec::new();
    if g.degree().unwrap_or(0) >= 1 {
        let bound = crate::roots::root_bound(&g);
        for slope in isolate_params_in(&g, &(-bound.clone()), &bound) {
            lines.push(TwinLine::Slope(slope));
        }
    }
    if vertical {
        lines.push(TwinLine::Vertical);
    }
    if lines.is_empty() {
        Ok(TwinSystemClass::OnlyDiagonal)
    } else {
        Ok(TwinSystemClass::UnionOfLines(lines))
    }
}

/// A concrete positive potential on a solution line: weights near the
/// diagonal stay positive on the polytope, verified exactly at every
/// vertex.
pub fn positive_representative(
    poly: &MomentPolytope,
    frame: &CornerFrame,
    line: &TwinLine,
) -> Result<Vec<Rat>> {
    let (d1, d2) = match line {
        TwinLine::Vertical => (rati(0), rati(1)),
        TwinLine::Slope(m) => match m.as_exact() {
            Some(v) => (rati(1), v.clone()),
            None => (rati(1), m.interval(&rat(1, 1024)).midpoint()),
        },
    };
    // shrink tau until all vertex values are positive
    let mut tau = rat(1, 2);
    'outer: for _ in 0..64 {
        let w = vec![rati(1), rati(1) + &tau * &d1, rati(1) + &tau * &d2];
        for v in 0..poly.vertices.len() {
            let alpha = barycentric_coords(poly, frame, v)?;
            let value: Rat = alpha.coords.iter().zip(&w).map(|(a, wi)| a * wi).sum();
            if !value.is_positive() {
                tau /= rati(4);
                continue 'outer;
            }
        }
        return Ok(w);
    }
    Err(PolytopeError::NotPositive("no positive representative found"))
}

// ---------------------------------------------------------------------------
// the simplex model

/// Inverse-Hessian grid of the simplex symplectic potential, with the
/// Laplacian eigenfunction constants of the moment coordinates.
#[derive(Clone, Debug)]
pub struct SimplexModel {
    pub n: usize,
    pub labels: Vec<AffineFunc>,
    /// `h[i][j]` as polynomials in the moment coordinates, `i, j = 1..n`
    /// stored zero-based.
    pub h: Vec<Vec<RatMPoly>>,
    /// Constants `p_j` with `Laplacian(x_j) = 2 (x_j - p_j)`.
    pub barycenter: Vec<Rat>,
}

#[allow(clippy::needless_range_loop)]
pub fn simplex_model(n: usize) -> Result<SimplexModel> {
    if n < 1 {
        return Err(PolytopeError::Dimension("simplex dimension must be >= 1"));
    }
    let poly = MomentPolytope::simplex(n);
    let labels = poly.labels().unwrap().to_vec();
    let ell: Vec<RatMPoly> = labels.iter().map(|l| l.as_mpoly(n)).collect();
    let np1 = rat(1, (n + 1) as i64);
    let mut h = vec![vec![MultiPoly::zero(n); n]; n];
    for i in 0..n {
        for j in 0..n {
            // H_ij = 2 delta_ij l_i - 2 l_i l_j / (n + 1), labels 1..n
            let li = &ell[i + 1];
            let lj = &ell[j + 1];
            let mut entry = (li * lj).scale(&(rati(-2) * &np1));
            if i == j {
                entry = &entry + &li.scale(&rati(2));
            }
            h[i][j] = entry;
        }
    }
    // symmetry and the facet boundary condition H(u_k, .) = 0 on F_k
    for i in 0..n {
        for j in 0..n {
            if h[i][j] != h[j][i] {
                return Err(PolytopeError::Internal("inverse Hessian not symmetric"));
            }
        }
    }
    for label in labels.iter() {
        let lk = label.as_mpoly(n);
        for j in 0..n {
            // (H u_k)_j = sum_i H_ij (u_k)_i with u_k the label gradient
            let mut entry = MultiPoly::zero(n);
            for i in 0..n {
                entry = &entry + &h[i][j].scale(&label.linear[i]);
            }
            if entry.div_exact(&lk).is_none() {
                return Err(PolytopeError::Internal("H u_k does not vanish on facet"));
            }
        }
    }
    // Laplacian of the moment coordinates: -sum_i d_i H_ij = 2 (x_j - p_j)
    let mut barycenter = Vec::with_capacity(n);
    for j in 0..n {
        let mut lap = MultiPoly::zero(n);
        for i in 0..n {
            lap = &lap - &h[i][j].partial(i);
        }
        let xj = MultiPoly::var(n, j);
        let diff = &lap - &xj.scale(&rati(2));
        if !diff.is_constant() {
            return Err(PolytopeError::Internal(
                "moment coordinate is not a Laplacian eigenfunction",
            ));
        }
        barycenter.push(-diff.constant_value() / rati(2));
    }
    Ok(SimplexModel {
        n,
        labels,
        h,
        barycenter,
    })
}

/// Outcome of the weighted-curvature check on the simplex: the expression
/// is certified affine and its exact coefficients are returned.
#[derive(Clone, Debug)]
pub struct SimplexTwinCheck {
    pub is_affine: bool,
    pub constant: Rat,
    pub linear: Vec<Rat>,
    pub residual: RatMPoly,
}

/// Compute `f^2 Scal - 2(p-1) f Lap(f) - p(p-1) |df|^2` symbolically on the
/// simplex (transverse normalization `Scal = 2n`) and certify that it is
/// affine. `f` must be positive at every vertex.
pub fn simplex_twin_check(
    model: &SimplexModel,
    f: &AffineFunc,
    weight: i64,
) -> Result<SimplexTwinCheck> {
    let n = model.n;
    if f.dim() != n {
        return Err(PolytopeError::Dimension("potential arity"));
    }
    let poly = MomentPolytope::simplex(n);
    for v in poly.vertices() {
        if !f.eval(v).is_positive() {
            return Err(PolytopeError::NotPositive("potential at a vertex"));
        }
    }
    let fp = f.as_mpoly(n);
    let scal = MultiPoly::constant(n, rati(2 * n as i64));
    // Lap f = sum_j v_j 2 (x_j - p_j)
    let mut lap_f = MultiPoly::zero(n);
    for j in 0..n {
        let term = &MultiPoly::var(n, j) - &MultiPoly::constant(n, model.barycenter[j].clone());
        lap_f = &lap_f + &term.scale(&(rati(2) * &f.linear[j]));
    }
    // |df|^2 = sum_ij H_ij v_i v_j
    let mut grad2 = MultiPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            grad2 = &grad2 + &model.h[i][j].scale(&(&f.linear[i] * &f.linear[j]));
        }
    }
    let p = weight;
    let expr = &(&(&fp * &fp) * &scal)
        - &(&(&fp * &lap_f).scale(&rati(2 * (p - 1))) + &grad2.scale(&rati(p * (p - 1))));
    let is_affine = expr.total_degree().unwrap_or(0) <= 1;
    let mut linear = Vec::with_capacity(n);
    let mut affine_part = MultiPoly::constant(n, expr.coeff(&vec![0; n]));
    for j in 0..n {
        let mut e = vec![0u32; n];
        e[j] = 1;
        let c = expr.coeff(&e);
        affine_part = &affine_part + &MultiPoly::var(n, j).scale(&c);
        linear.push(c);
    }
    let residual = &expr - &affine_part;
    Ok(SimplexTwinCheck {
        is_affine,
        constant: expr.coeff(&vec![0; n]),
        linear,
        residual,
    })
}

// ---------------------------------------------------------------------------
// line/quadric property of constant-scalar ray families

/// Verdict of the ray-family property: no line meets the projectivized ray
/// set in three or more points, and the set lies on a quadric.
#[derive(Clone, Debug)]
pub struct LinePropertyVerdict {
    pub no_three_collinear: bool,
    pub quadric: Option<Vec<Rat>>,
    pub pass: bool,
}

/// Normalize rays to projective representatives (first nonzero coordinate
/// scaled to one) and test the property. Rays must be nonzero.
pub fn cscs_line_property(rays: &[Vec<Rat>]) -> Result<LinePropertyVerdict> {
    if rays.is_empty() {
        return Err(PolytopeError::TooFewVertices);
    }
    let d = rays[0].len();
    if rays.iter().any(|r| r.len() != d) {
        return Err(PolytopeError::Dimension("ray arity mismatch"));
    }
    let mut points = Vec::with_capacity(rays.len());
    for r in rays {
        let pivot = r
            .iter()
            .find(|v| !v.is_zero())
            .ok_or(PolytopeError::Dimension("zero ray"))?;
        points.push(r.iter().map(|v| v / pivot).collect::<Vec<Rat>>());
    }
    // collinearity of distinct triples via rank of the difference pairs
    let mut no_three_collinear = true;
    'triples: for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            for k in (j + 1)..points.len() {
                if points[i] == points[j] || points[j] == points[k] || points[i] == points[k] {
                    continue;
                }
                let u: Vec<Rat> = points[j]
                    .iter()
                    .zip(&points[i])
                    .map(|(a, b)| a - b)
                    .collect();
                let v: Vec<Rat> = points[k]
                    .iter()
                    .zip(&points[i])
                    .map(|(a, b)| a - b)
                    .collect();
                let mut rank1 = true;
                for p in 0..d {
                    for q in (p + 1)..d {
                        if !(&u[p] * &v[q] - &u[q] * &v[p]).is_zero() {
                            rank1 = false;
                        }
                    }
                }
                if rank1 {
                    no_three_collinear = false;
                    break 'triples;
                }
            }
        }
    }
    // quadric through the points: nullspace of the monomial-evaluation map
    let monomials = quadric_monomials(d);
    let rows: Vec<Vec<Rat>> = points
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|e| {
                    let mut acc = rati(1);
                    for (i, &k) in e.iter().enumerate() {
                        for _ in 0..k {
                            acc *= &p[i];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let m = Matrix::from_rows(rows);
    let sol = m.solve_general(&vec![rati(0); points.len()]);
    let quadric = sol.nullspace.into_iter().next();
    let pass = no_three_collinear && quadric.is_some();
    Ok(LinePropertyVerdict {
        no_three_collinear,
        quadric,
        pass,
    })
}

fn quadric_monomials(d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; d]];
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        out.push(e);
    }
    for i in 0..d {
        for j in i..d {
            let mut e = vec![0; d];
            e[i] += 1;
            e[j] += 1;
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> MomentPolytope {
        MomentPolytope::new_2d(vec![
            vec![rati(-1), rati(-1)],
            vec![rati(-1), rati(1)],
            vec![rati(1), rati(-1)],
            vec![rati(1), rati(1)],
        ])
        .unwrap()
    }

    fn hexagon() -> MomentPolytope {
        MomentPolytope::new_2d(vec![
            vec![rati(-1), rati(0)],
            vec![rati(0), rati(-1)],
            vec![rati(-1), rati(1)],
            vec![rati(0), rati(1)],
            vec![rati(1), rati(0)],
            vec![rati(1), rati(-1)],
        ])
        .unwrap()
    }

    fn hexagon_frame(poly: &MomentPolytope) -> CornerFrame {
        // base (-1,0), (0,-1), (-1,1)
        CornerFrame::new(poly, vec![0, 1, 2]).unwrap()
    }

    #[test]
    fn hexagon_barycentric_coordinates() {
        let hex = hexagon();
        let frame = hexagon_frame(&hex);
        let p3 = barycentric_coords(&hex, &frame, 3).unwrap();
        assert_eq!(p3.coords, vec![rati(-2), rati(1), rati(2)]);
        let p4 = barycentric_coords(&hex, &frame, 4).unwrap();
        assert_eq!(p4.coords, vec![rati(-3), rati(2), rati(2)]);
        let p5 = barycentric_coords(&hex, &frame, 5).unwrap();
        assert_eq!(p5.coords, vec![rati(-2), rati(2), rati(1)]);
        // base vertex gets the unit coordinates
        let p0 = barycentric_coords(&hex, &frame, 0).unwrap();
        assert_eq!(p0.coords, vec![rati(1), rati(0), rati(0)]);
    }

    #[test]
    fn square_barycentric_and_equation() {
        let sq = square();
        let frame = CornerFrame::new(&sq, vec![0, 1, 2]).unwrap();
        let p3 = barycentric_coords(&sq, &frame, 3).unwrap();
        assert_eq!(p3.coords, vec![rati(-1), rati(1), rati(1)]);
        // residual factors as -2 (w1 - w0)(w2 - w0)
        let w = vec![rat(1, 3), rat(7, 5), rat(-2, 9)];
        let res = vertex_twin_residual(&p3, &w);
        let expect = rati(-2) * (&w[1] - &w[0]) * (&w[2] - &w[0]);
        assert_eq!(res, expect);
        // constant weights always solve
        assert!(vertex_twin_residual(&p3, &[rati(5), rati(5), rati(5)]).is_zero());
    }

    #[test]
    fn residual_forms_agree() {
        let hex = hexagon();
        let frame = hexagon_frame(&hex);
        for v in 0..6 {
            let alpha = barycentric_coords(&hex, &frame, v).unwrap();
            for w in [
                vec![rati(1), rati(2), rati(3)],
                vec![rat(1, 2), rat(-1, 3), rat(2, 7)],
                vec![rati(4), rati(4), rati(4)],
            ] {
                assert_eq!(
                    vertex_twin_residual(&alpha, &w),
                    vertex_twin_residual_full(&alpha, &w)
                );
            }
        }
    }

    #[test]
    fn reconstruction_identity() {
        let hex = hexagon();
        let frame = hexagon_frame(&hex);
        for v in 0..6 {
            let alpha = barycentric_coords(&hex, &frame, v).unwrap();
            let total: Rat = alpha.coords.iter().sum();
            assert_eq!(total, rati(1));
            for d in 0..2 {
                let rebuilt: Rat = alpha
                    .coords
                    .iter()
                    .zip(frame.indices())
                    .map(|(a, &i)| a * &hex.vertices()[i][d])
                    .sum();
                assert_eq!(rebuilt, hex.vertices()[v][d]);
            }
        }
    }

    #[test]
    fn square_system_is_two_lines() {
        let sq = square();
        let frame = CornerFrame::new(&sq, vec![0, 1, 2]).unwrap();
        let sys = build_twin_system(&sq, &frame).unwrap();
        assert_eq!(sys.equations.len(), 1);
        match solve_twin_system_2d(&sys).unwrap() {
            TwinSystemClass::UnionOfLines(lines) => {
                assert_eq!(lines.len(), 2);
                let mut saw_vertical = false;
                let mut saw_zero_slope = false;
                for line in &lines {
                    match line {
                        TwinLine::Vertical => saw_vertical = true,
                        TwinLine::Slope(m) => {
                            assert_eq!(m.as_exact(), Some(&rati(0)));
                            saw_zero_slope = true;
                        }
                    }
                    let w = positive_representative(&sq, &frame, line).unwrap();
                    assert!(w.iter().all(|v| v.is_positive()));
                }
                assert!(saw_vertical && saw_zero_slope);
            }
            other => panic!("expected two lines, got {:?}", other),
        }
    }

    #[test]
    fn hexagon_has_no_twin() {
        let hex = hexagon();
        let frame = hexagon_frame(&hex);
        let sys = build_twin_system(&hex, &frame).unwrap();
        assert_eq!(sys.equations.len(), 3);
        match solve_twin_system_2d(&sys).unwrap() {
            TwinSystemClass::OnlyDiagonal => {}
            other => panic!("expected only the diagonal, got {:?}", other),
        }
    }

    #[test]
    fn hexagon_classification_is_corner_independent() {
        let hex = hexagon();
        for p0 in 0..6 {
            let (u, v) = hex.hull_neighbors(p0).unwrap();
            let frame = CornerFrame::new(&hex, vec![p0, u, v]).unwrap();
            let sys = build_twin_system(&hex, &frame).unwrap();
            assert!(matches!(
                solve_twin_system_2d(&sys).unwrap(),
                TwinSystemClass::OnlyDiagonal
            ));
        }
    }

    #[test]
    fn hexagon_elimination_steps() {
        // Q3 = -2 u2^2 - 4 u1 u2, Q4 = -2 u1^2 - 2 u2^2 - 8 u1 u2,
        // Q5 = -2 u1^2 - 4 u1 u2; eliminating gives u1^2 = u2^2 and then a
        // contradiction unless u = 0
        let hex = hexagon();
        let frame = hexagon_frame(&hex);
        let sys = build_twin_system(&hex, &frame).unwrap();
        let q3 = &sys.equations[0].1;
        let q4 = &sys.equations[1].1;
        let u1 = MultiPoly::var(2, 0);
        let u2 = MultiPoly::var(2, 1);
        let u1sq = &u1 * &u1;
        let u2sq = &u2 * &u2;
        let expect_q3 = &u2sq.scale(&rati(-2)) - &(&u1 * &u2).scale(&rati(4));
        assert_eq!(q3, &expect_q3);
        // Q4 - 2 Q3 = -2 u1^2 + 2 u2^2
        let elim = q4 - &q3.scale(&rati(2));
        let expect = &u2sq.scale(&rati(2)) - &u1sq.scale(&rati(2));
        assert_eq!(elim, expect);
        // substituting u2 = u1 and u2 = -u1 into Q3 leaves -6 u1^2, 2 u1^2
        let sub_plus = q3.substitute(1, &u1);
        assert_eq!(sub_plus, u1sq.scale(&rati(-6)));
        let sub_minus = q3.substitute(1, &(-&u1));
        assert_eq!(sub_minus, u1sq.scale(&rati(2)));
    }

    #[test]
    fn simplex_system_is_empty() {
        let sim = MomentPolytope::simplex(2);
        let frame = sim.lex_corner().unwrap();
        let sys = build_twin_system(&sim, &frame).unwrap();
        assert!(sys.equations.is_empty());
        assert!(matches!(
            solve_twin_system_2d(&sys).unwrap(),
            TwinSystemClass::FullSpace
        ));
    }

    #[test]
    fn simplex_model_dimension_one() {
        let m = simplex_model(1).unwrap();
        // H_11 = 2 l_1 - l_1^2 = 1 - x^2 and Lap x = 2x, so p_1 = 0
        let x = MultiPoly::var(1, 0);
        let expect = &MultiPoly::one(1) - &(&x * &x);
        assert_eq!(m.h[0][0], expect);
        assert_eq!(m.barycenter, vec![rati(0)]);
    }

    #[test]
    fn simplex_eigenfunctions_up_to_four() {
        for n in 1..=4 {
            let m = simplex_model(n).unwrap();
            assert_eq!(m.barycenter, vec![rati(0); n]);
        }
    }

    #[test]
    fn simplex_check_constant_potential() {
        let m = simplex_model(2).unwrap();
        let f = AffineFunc::new(vec![rati(0), rati(0)], rati(1));
        let chk = simplex_twin_check(&m, &f, 4).unwrap();
        assert!(chk.is_affine);
        assert_eq!(chk.constant, rati(4));
        assert!(chk.linear.iter().all(|c| c.is_zero()));
        assert!(chk.residual.is_zero());
    }

    #[test]
    fn simplex_check_affine_potentials() {
        let m = simplex_model(2).unwrap();
        let f = AffineFunc::new(vec![rat(1, 2), rati(0)], rati(1));
        let chk = simplex_twin_check(&m, &f, 4).unwrap();
        assert!(chk.is_affine);
        assert!(chk.residual.is_zero());
        let m3 = simplex_model(3).unwrap();
        let f3 = AffineFunc::new(vec![rat(1, 7), rat(-1, 9), rat(1, 5)], rati(2));
        let chk3 = simplex_twin_check(&m3, &f3, 5).unwrap();
        assert!(chk3.is_affine);
    }

    #[test]
    fn simplex_check_requires_positivity() {
        let m = simplex_model(2).unwrap();
        let f = AffineFunc::new(vec![rati(1), rati(0)], rati(0));
        assert!(simplex_twin_check(&m, &f, 4).is_err());
    }

    #[test]
    fn line_property_cases() {
        // two rays: vacuous pass
        let v = cscs_line_property(&[vec![rati(1), rati(1)], vec![rati(1), rati(-1)]]).unwrap();
        assert!(v.pass);
        // single ray: vacuous
        let v = cscs_line_property(&[vec![rati(2), rati(3)]]).unwrap();
        assert!(v.pass);
        // three collinear points: negative control
        let v = cscs_line_property(&[
            vec![rati(1), rati(0)],
            vec![rati(1), rati(1)],
            vec![rati(1), rati(2)],
        ])
        .unwrap();
        assert!(!v.no_three_collinear);
        assert!(!v.pass);
    }

    #[test]
    fn convexity_is_enforced() {
        // the midpoint of an edge is not an extreme point
        let bad = MomentPolytope::new_2d(vec![
            vec![rati(0), rati(0)],
            vec![rati(1), rati(0)],
            vec![rati(2), rati(0)],
            vec![rati(1), rati(1)],
        ]);
        assert!(matches!(bad, Err(PolytopeError::NotExtreme { .. })));
    }

    #[test]
    fn labels_are_validated() {
        let sq = square();
        let good = vec![
            AffineFunc::new(vec![rati(1), rati(0)], rati(1)),
            AffineFunc::new(vec![rati(-1), rati(0)], rati(1)),
            AffineFunc::new(vec![rati(0), rati(1)], rati(1)),
            AffineFunc::new(vec![rati(0), rati(-1)], rati(1)),
        ];
        assert!(sq.clone().with_labels(good).is_ok());
        let bad = vec![AffineFunc::new(vec![rati(1), rati(0)], rati(0))];
        assert!(sq.with_labels(bad).is_err());
    }
}
