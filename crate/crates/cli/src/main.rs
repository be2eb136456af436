//! `twins`: exact computation and certification of weighted extremal twin
//! structures on ruled surfaces, moment polytopes, and toric quadrilaterals.

mod formats;
mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use report::{Cell, Report};
use std::path::PathBuf;
use std::time::Instant;
use twins_core::hirzebruch::{self, ResidualCertificate};
use twins_core::polytope::{self, TwinLine, TwinSystemClass};
use twins_core::quad::{self, FitOutcome, MomentAffine, ToricAnsatz};
use twins_core::value::ParamValue;
use twins_core::num_traits::{Signed, Zero};
use twins_core::{parse_rat, rat, rati, Rat};

#[derive(Parser)]
#[command(name = "twins", version, about = "Exact weighted extremal twin computations")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Decimal digits for rendered values.
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Twin structures on the twisted surfaces (genus zero).
    Hirzebruch {
        #[command(subcommand)]
        sub: HirzCmd,
    },
    /// Higher-genus ruled surfaces and join presentations.
    Genus {
        #[command(subcommand)]
        sub: GenusCmd,
    },
    /// Moment-polytope obstructions.
    Polytope {
        #[command(subcommand)]
        sub: PolyCmd,
    },
    /// Toric ansatze on quadrilaterals.
    Quad {
        #[command(subcommand)]
        sub: QuadCmd,
    },
    /// Run the verification suite (exit code 1 on any failure).
    Verify {
        /// `all` or a section tag: s3, s4, s5, s6.
        #[arg(default_value = "all")]
        selector: String,
    },
}

#[derive(Subcommand)]
enum HirzCmd {
    /// Twin partner of a potential parameter.
    Twin {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        x: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true, default_value = "0")]
        a: Rat,
        /// Override the base scalar (defaults to 2/n).
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        s: Option<Rat>,
    },
    /// Twin-equation conic data for a class.
    Conic {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        x: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        s: Option<Rat>,
    },
    /// Certified Einstein-Maxwell potential parameters.
    Em {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        x: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        s: Option<Rat>,
    },
    /// Certified constant-scalar ray and its twin.
    Cscs {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        x: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        s: Option<Rat>,
    },
    /// Grid scan over classes and potentials.
    Scan {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        s: Option<Rat>,
        /// Class range `lo..hi` (inclusive, exact rationals).
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        step: Rat,
        /// Fixed potential parameter for every row.
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true, default_value = "0")]
        a: Rat,
        /// Sweep the potential parameter over `lo..hi` instead.
        #[arg(long, allow_hyphen_values = true)]
        a_range: Option<String>,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        a_step: Option<Rat>,
    },
}

#[derive(Subcommand)]
enum GenusCmd {
    /// Twin of the always-positive profile choice on a ruled surface.
    Twin {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        x: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        s: Option<Rat>,
    },
    /// Join parameters of the smooth quotient presentation.
    Join {
        #[arg(long)]
        w1: u64,
        #[arg(long)]
        w2: u64,
        #[arg(long)]
        l1: u64,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Check a polytope file: barycentric frame, twin system, verdict.
    Check { path: PathBuf },
}

#[derive(Subcommand)]
enum QuadCmd {
    /// Fit an ansatz file and report profiles and verdicts.
    Fit { path: PathBuf },
    /// Search the fitted ansatz for its twin certificate.
    Twin { path: PathBuf },
    /// The explicit constant-scalar twin family on a trapezoid.
    CscsFamily {
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        alpha1: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        alpha2: Rat,
        /// Positive label constant of the family.
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true, default_value = "1")]
        c: Rat,
    },
    /// The weighted extremal product family on the trivial bundle.
    Lebrun {
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        alpha: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        beta: Rat,
        #[arg(long, value_parser = parse_rat_arg, allow_hyphen_values = true)]
        c: Rat,
    },
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s)
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    eprintln!("# timing: {} ms", started.elapsed().as_millis());
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    let digits = cli.digits;
    match cli.cmd {
        Cmd::Verify { selector } => run_verify(&selector),
        Cmd::Hirzebruch { sub } => {
            let report = run_hirzebruch(sub, digits)?;
            emit(&report, cli.format, digits, cli.out.as_deref())?;
            Ok(0)
        }
        Cmd::Genus { sub } => {
            let report = run_genus(sub)?;
            emit(&report, cli.format, digits, cli.out.as_deref())?;
            Ok(0)
        }
        Cmd::Polytope { sub } => {
            let report = run_polytope(sub)?;
            emit(&report, cli.format, digits, cli.out.as_deref())?;
            Ok(0)
        }
        Cmd::Quad { sub } => {
            let report = run_quad(sub, digits)?;
            emit(&report, cli.format, digits, cli.out.as_deref())?;
            Ok(0)
        }
    }
}

fn emit(report: &Report, format: OutFormat, digits: usize, out: Option<&std::path::Path>) -> Result<()> {
    let text = match format {
        OutFormat::Csv => report.to_csv(digits),
        OutFormat::Json => report.to_json(digits),
    };
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path:?}"))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_verify(selector: &str) -> Result<i32> {
    let results = twins_core::acceptance::run_selected(selector).map_err(|e| anyhow!(e))?;
    let mut failed = 0;
    for r in &results {
        match &r.outcome {
            Ok(()) => println!("PASS [{}] {} {}", r.section, r.id, r.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {} {}: {}", r.section, r.id, r.name, msg);
            }
        }
        eprintln!("# {} {}: {} ms", r.id, r.name, r.millis);
    }
    println!(
        "verified {} criteria, {} failed",
        results.len(),
        failed
    );
    Ok(if failed > 0 { 1 } else { 0 })
}

fn base_scalar(n: u32, s: Option<Rat>) -> Rat {
    s.unwrap_or_else(|| rat(2, n as i64))
}

fn twin_pair_cells(pair: &hirzebruch::TwinPair, digits: usize) -> (Cell, Cell, Cell) {
    let residual = match &pair.residual {
        ResidualCertificate::ExactZero => Cell::Text("exact-zero".into()),
        ResidualCertificate::Certified { width } => {
            Cell::Text(format!("certified<{}", twins_core::render::width_bound(width)))
        }
    };
    (
        Cell::param(&pair.b, digits),
        Cell::Flag(pair.bifurcation),
        residual,
    )
}

fn run_hirzebruch(sub: HirzCmd, digits: usize) -> Result<Report> {
    match sub {
        HirzCmd::Twin { n, x, a, s } => {
            let s = base_scalar(n, s);
            check_open(&x, 0, 1, "x")?;
            check_open(&a, -1, 1, "a")?;
            let mut report = Report::new(
                format!("hirzebruch twin --n {n} --x {x} --a {a}"),
                &["s", "x", "a", "b", "bifurcation", "residual"],
            );
            match hirzebruch::twin_of(&s, &x, &ParamValue::exact(a.clone())) {
                Some(pair) => {
                    let b = pair.b.as_exact().cloned().context("rational input twin")?;
                    if !hirzebruch::twin_residual(&s, &x, &a, &b).is_zero() {
                        bail!("internal: emitted pair fails the twin equation");
                    }
                    let (bc, bif, res) = twin_pair_cells(&pair, digits);
                    report.push_row(vec![
                        Cell::Exact(s.clone()),
                        Cell::Exact(x.clone()),
                        Cell::Exact(a.clone()),
                        bc,
                        bif,
                        res,
                    ]);
                }
                None => {
                    report.push_row(vec![
                        Cell::Exact(s.clone()),
                        Cell::Exact(x.clone()),
                        Cell::Exact(a.clone()),
                        Cell::Text("none".into()),
                        Cell::Flag(false),
                        Cell::Text("n/a".into()),
                    ]);
                    report.note("no partner inside (-1, 1)");
                }
            }
            Ok(report)
        }
        HirzCmd::Conic { n, x, s } => {
            let s = base_scalar(n, s);
            check_open(&x, 0, 1, "x")?;
            let conic = hirzebruch::twin_conic(&s, &x);
            let mut report = Report::new(
                format!("hirzebruch conic --n {n} --x {x}"),
                &["s", "x", "B", "D", "F", "determinant", "classification"],
            );
            let class = if conic.nondegenerate {
                "nondegenerate-hyperbola"
            } else {
                "degenerate"
            };
            report.push_row(vec![
                Cell::Exact(s),
                Cell::Exact(x),
                Cell::Exact(conic.b),
                Cell::Exact(conic.d),
                Cell::Exact(conic.f),
                Cell::Exact(conic.determinant),
                Cell::Text(class.into()),
            ]);
            Ok(report)
        }
        HirzCmd::Em { n, x, s } => {
            let s = base_scalar(n, s);
            check_open(&x, 0, 1, "x")?;
            let roots = hirzebruch::em_roots(&s, &x);
            let mut report = Report::new(
                format!("hirzebruch em --n {n} --x {x}"),
                &["s", "x", "c", "defining", "a1_zero"],
            );
            let count = roots.len();
            for c in roots {
                let defining = c.minimal_poly().integer_normalized();
                let a1_zero = hirzebruch::a1_vanishes(&s, &x, &c).map_err(|e| anyhow!("{e}"))?;
                report.push_row(vec![
                    Cell::Exact(s.clone()),
                    Cell::Exact(x.clone()),
                    Cell::param(&c, digits),
                    Cell::Text(twins_core::render::poly(&defining, "c")),
                    Cell::Flag(a1_zero),
                ]);
            }
            report.note(format!("{count} certified parameter(s) in (-1, 1)"));
            Ok(report)
        }
        HirzCmd::Cscs { n, x, s } => {
            let s = base_scalar(n, s);
            check_open(&x, 0, 1, "x")?;
            let root = hirzebruch::cscs_root(&s, &x).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new(
                format!("hirzebruch cscs --n {n} --x {x}"),
                &["s", "x", "c", "defining", "twin_b", "bifurcation", "residual"],
            );
            let defining = root.minimal_poly().integer_normalized();
            let defining = twins_core::render::poly(&defining, "c");
            let twin = hirzebruch::cscs_twin(&s, &x).map_err(|e| anyhow!("{e}"))?;
            let (b_cell, bif_cell, res_cell) = match &twin {
                Some(pair) => twin_pair_cells(pair, digits),
                None => (
                    Cell::Text("none".into()),
                    Cell::Flag(true),
                    Cell::Text("exact-zero".into()),
                ),
            };
            report.push_row(vec![
                Cell::Exact(s.clone()),
                Cell::Exact(x.clone()),
                Cell::param(&root, digits),
                Cell::Text(defining),
                b_cell,
                bif_cell,
                res_cell,
            ]);
            if twin.is_none() {
                report.note("constant-scalar ray is its own twin in this subcone");
            }
            Ok(report)
        }
        HirzCmd::Scan {
            n,
            s,
            range,
            step,
            a,
            a_range,
            a_step,
        } => {
            let s = base_scalar(n, s);
            if !step.is_positive() {
                bail!("--step must be positive");
            }
            let (x_lo, x_hi) = parse_range(&range)?;
            let a_values: Vec<Rat> = match a_range {
                None => vec![a],
                Some(spec) => {
                    let (lo, hi) = parse_range(&spec)?;
                    let h = a_step.context("--a-range needs --a-step")?;
                    if !h.is_positive() {
                        bail!("--a-step must be positive");
                    }
                    grid(&lo, &hi, &h)
                }
            };
            let mut report = Report::new(
                format!("hirzebruch scan --n {n} --range {range} --step {step}"),
                &[
                    "s",
                    "x",
                    "a",
                    "b",
                    "bifurcation",
                    "a1_zero_a",
                    "a1_zero_b",
                    "cscs_root",
                    "a_is_cscs",
                ],
            );
            for x in grid(&x_lo, &x_hi, &step) {
                if !(x > rati(0) && x < rati(1)) {
                    continue;
                }
                let cscs = hirzebruch::cscs_root(&s, &x).map_err(|e| anyhow!("{e}"))?;
                let cubic = hirzebruch::cscs_cubic(&s, &x);
                for a in &a_values {
                    if a.abs() >= rati(1) {
                        continue;
                    }
                    let pair = hirzebruch::twin_of(&s, &x, &ParamValue::exact(a.clone()));
                    let (b_cell, bif) = match &pair {
                        Some(p) => {
                            let b = p.b.as_exact().cloned().context("rational twin")?;
                            if !hirzebruch::twin_residual(&s, &x, a, &b).is_zero() {
                                bail!("internal: scan row fails the twin equation");
                            }
                            (Cell::Exact(b), p.bifurcation)
                        }
                        None => (Cell::Text("none".into()), false),
                    };
                    let (a1_a, _) =
                        hirzebruch::extremal_affine_coeffs(&s, &x, a).map_err(|e| anyhow!("{e}"))?;
                    let a1_zero_b = match &pair {
                        Some(p) => {
                            let b = p.b.as_exact().unwrap();
                            let (a1_b, _) = hirzebruch::extremal_affine_coeffs(&s, &x, b)
                                .map_err(|e| anyhow!("{e}"))?;
                            a1_b.is_zero()
                        }
                        None => false,
                    };
                    report.push_row(vec![
                        Cell::Exact(s.clone()),
                        Cell::Exact(x.clone()),
                        Cell::Exact(a.clone()),
                        b_cell,
                        Cell::Flag(bif),
                        Cell::Flag(a1_a.is_zero()),
                        Cell::Flag(a1_zero_b),
                        Cell::param(&cscs, digits),
                        Cell::Flag(cubic.eval(a).is_zero()),
                    ]);
                }
            }
            if report.rows.is_empty() {
                report.note("empty scan range");
            }
            Ok(report)
        }
    }
}

fn run_genus(sub: GenusCmd) -> Result<Report> {
    match sub {
        GenusCmd::Twin { genus, n, x, s } => {
            let s = s.unwrap_or_else(|| {
                rat(2 * (1 - genus as i64), n as i64)
            });
            check_open(&x, 0, 1, "x")?;
            let gt = hirzebruch::genus_twin(&s, &x).map_err(|e| anyhow!("{e}"))?;
            if !hirzebruch::twin_residual(&s, &x, &gt.a, &gt.b).is_zero() {
                bail!("internal: emitted pair fails the twin equation");
            }
            let mut report = Report::new(
                format!("genus twin --genus {genus} --n {n} --x {x}"),
                &[
                    "genus",
                    "s",
                    "x",
                    "a",
                    "b",
                    "in_range",
                    "bifurcation",
                    "positive_a",
                    "positive_b",
                ],
            );
            report.push_row(vec![
                Cell::Int(genus as i64),
                Cell::Exact(s),
                Cell::Exact(x),
                Cell::Exact(gt.a.clone()),
                Cell::Exact(gt.b.clone()),
                Cell::Flag(gt.in_range),
                Cell::Flag(gt.bifurcation),
                Cell::Flag(gt.positive_a),
                match gt.positive_b {
                    Some(p) => Cell::Flag(p),
                    None => Cell::Text("n/a".into()),
                },
            ]);
            Ok(report)
        }
        GenusCmd::Join { w1, w2, l1 } => {
            let j = hirzebruch::join_params(w1, w2, l1).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new(
                format!("genus join --w1 {w1} --w2 {w2} --l1 {l1}"),
                &["w1", "w2", "l1", "l2", "n", "x", "twisted"],
            );
            report.push_row(vec![
                Cell::Int(j.w1 as i64),
                Cell::Int(j.w2 as i64),
                Cell::Int(j.l1 as i64),
                Cell::Int(j.l2 as i64),
                Cell::Int(j.twist as i64),
                Cell::Exact(j.x.clone()),
                Cell::Flag(j.twisted),
            ]);
            Ok(report)
        }
    }
}

fn run_polytope(sub: PolyCmd) -> Result<Report> {
    let PolyCmd::Check { path } = sub;
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {path:?}"))?;
    let parsed = formats::parse_polytope(&text)?;
    let poly = parsed.polytope;
    let mut report = Report::new(
        format!("polytope check {}", path.display()),
        &["vertex", "coordinates", "barycentric"],
    );
    if let Some(note) = parsed.lattice_note {
        report.note(format!("lattice: {note}"));
    }
    if poly.labels().is_some() {
        report.note("labels reproduce the hull");
    }
    let frame = poly.lex_corner().map_err(|e| anyhow!("{e}"))?;
    report.note(format!("corner frame: vertices {:?}", frame.indices()));
    for v in 0..poly.vertices().len() {
        let alpha = polytope::barycentric_coords(&poly, &frame, v).map_err(|e| anyhow!("{e}"))?;
        let coords: Vec<String> = poly.vertices()[v].iter().map(|c| c.to_string()).collect();
        let bary: Vec<String> = alpha.coords.iter().map(|c| c.to_string()).collect();
        report.push_row(vec![
            Cell::Int(v as i64),
            Cell::Text(coords.join(" ")),
            Cell::Text(bary.join(" ")),
        ]);
    }
    let sys = polytope::build_twin_system(&poly, &frame).map_err(|e| anyhow!("{e}"))?;
    if sys.equations.is_empty() {
        report.note("empty system: full Sasaki cone");
        return Ok(report);
    }
    if poly.dim() != 2 {
        report.note(format!(
            "classification unsupported for dimension {} ({} equations built)",
            poly.dim(),
            sys.equations.len()
        ));
        return Ok(report);
    }
    match polytope::solve_twin_system_2d(&sys).map_err(|e| anyhow!("{e}"))? {
        TwinSystemClass::FullSpace => report.note("empty system: full Sasaki cone"),
        TwinSystemClass::OnlyDiagonal => report.note("only-diagonal: no twin"),
        TwinSystemClass::UnionOfLines(lines) => {
            let mut described = Vec::new();
            for line in &lines {
                match line {
                    TwinLine::Vertical => described.push("w1 = w0".to_string()),
                    TwinLine::Slope(m) => match m.as_exact() {
                        Some(v) if v.is_zero() => described.push("w2 = w0".to_string()),
                        Some(v) => described.push(format!("(w2 - w0) = {v} (w1 - w0)")),
                        None => described.push(format!(
                            "(w2 - w0) = m (w1 - w0) with m in {:?}",
                            m.interval(&rat(1, 1_000_000)).midpoint()
                        )),
                    },
                }
                let w = polytope::positive_representative(&poly, &frame, line)
                    .map_err(|e| anyhow!("{e}"))?;
                let ws: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                report.note(format!("positive representative: ({})", ws.join(", ")));
            }
            report.note(format!(
                "{} solution line(s): {}",
                described.len(),
                described.join("; ")
            ));
        }
        TwinSystemClass::CurveSamples(_) => report.note("curve with certified samples"),
    }
    Ok(report)
}

fn ansatz_kind_name(a: &ToricAnsatz) -> &'static str {
    match a.kind() {
        quad::AnsatzKind::Calabi => "calabi",
        quad::AnsatzKind::Orthotoric => "orthotoric",
        quad::AnsatzKind::Product => "product",
    }
}

fn poly_cells(p: &twins_core::RatPoly) -> Cell {
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    Cell::Text(coeffs.join(" "))
}

fn run_quad(sub: QuadCmd, digits: usize) -> Result<Report> {
    match sub {
        QuadCmd::Fit { path } => {
            let text =
                std::fs::read_to_string(&path).with_context(|| format!("reading {path:?}"))?;
            let parsed = formats::parse_ansatz(&text)?;
            let mut report = Report::new(
                format!("quad fit {}", path.display()),
                &["kind", "profile", "coefficients_ascending", "positive"],
            );
            match parsed.ansatz {
                FitOutcome::Infeasible => {
                    report.note("infeasible: boundary system is inconsistent");
                }
                FitOutcome::Fitted(ansatz) => {
                    let (a, b) = ansatz.profiles();
                    let (pa, pb) = match &ansatz {
                        ToricAnsatz::Calabi(c) => (c.positive_a, c.positive_b),
                        ToricAnsatz::Orthotoric(o) => (o.positive_a, o.positive_b),
                        ToricAnsatz::Product(p) => (p.positive_a, p.positive_b),
                    };
                    report.push_row(vec![
                        Cell::Text(ansatz_kind_name(&ansatz).into()),
                        Cell::Text("A".into()),
                        poly_cells(a),
                        Cell::Flag(pa),
                    ]);
                    report.push_row(vec![
                        Cell::Text(ansatz_kind_name(&ansatz).into()),
                        Cell::Text("B".into()),
                        poly_cells(b),
                        Cell::Flag(pb),
                    ]);
                    let data = quad::metric_data(&ansatz);
                    let scal = quad::affine_in_moments(&data.scal, &data);
                    if scal.is_affine {
                        report.note(format!(
                            "extremal: Scal = {} + {} mu1 + {} mu2",
                            scal.coeffs.lambda, scal.coeffs.c1, scal.coeffs.c2
                        ));
                    } else {
                        report.note("not extremal: Scal is not affine in the moments");
                    }
                    report.note("boundary conditions hold exactly");
                }
            }
            Ok(report)
        }
        QuadCmd::Twin { path } => {
            let text =
                std::fs::read_to_string(&path).with_context(|| format!("reading {path:?}"))?;
            let parsed = formats::parse_ansatz(&text)?;
            let mut report = Report::new(
                format!("quad twin {}", path.display()),
                &["kind", "lambda", "c1", "c2", "positive", "verified_affine"],
            );
            match parsed.ansatz {
                FitOutcome::Infeasible => {
                    report.note("infeasible: boundary system is inconsistent");
                }
                FitOutcome::Fitted(ansatz) => match quad::find_twin(&ansatz).map_err(|e| anyhow!("{e}"))? {
                    None => report.note("none: only the trivial potential"),
                    Some(cert) => {
                        report.push_row(vec![
                            Cell::Text(ansatz_kind_name(&ansatz).into()),
                            Cell::Exact(cert.f.lambda.clone()),
                            Cell::Exact(cert.f.c1.clone()),
                            Cell::Exact(cert.f.c2.clone()),
                            Cell::Flag(cert.positive),
                            Cell::Flag(cert.verified_affine),
                        ]);
                        report.note("condition residuals are exactly zero");
                    }
                },
            }
            Ok(report)
        }
        QuadCmd::CscsFamily { alpha1, alpha2, c } => {
            let fam =
                quad::cscs_twin_family(&alpha1, &alpha2, &c).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new(
                format!("quad cscs-family --alpha1 {alpha1} --alpha2 {alpha2} --c {c}"),
                &["scal", "lambda", "c1", "both_cscs"],
            );
            report.push_row(vec![
                Cell::Exact(fam.scal.clone()),
                Cell::Exact(fam.certificate.f.lambda.clone()),
                Cell::Exact(fam.certificate.f.c1.clone()),
                Cell::Flag(fam.both_cscs),
            ]);
            let ratio = &alpha2 / &alpha1;
            if ratio > rati(1) {
                let (k1, k2, k3, k4) = quad::lattice_labels(&ratio).map_err(|e| anyhow!("{e}"))?;
                report.note(format!("lattice labels (k1,k2,k3,k4) = ({k1},{k2},{k3},{k4})"));
            }
            Ok(report)
        }
        QuadCmd::Lebrun { alpha, beta, c } => {
            let fam = quad::product_lebrun(&alpha, &beta, &c).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new(
                format!("quad lebrun --alpha {alpha} --beta {beta} --c {c}"),
                &["wscal_const", "wscal_y", "twin_plus", "twin_minus", "cscs_lo", "cscs_hi"],
            );
            let (lo, hi) = match &fam.cscs {
                Some((lo, hi)) => (Cell::param(lo, digits), Cell::param(hi, digits)),
                None => (Cell::Text("none".into()), Cell::Text("none".into())),
            };
            report.push_row(vec![
                Cell::Exact(fam.wscal_affine.0.clone()),
                Cell::Exact(fam.wscal_affine.1.clone()),
                Cell::Exact(fam.twin.0.clone()),
                Cell::Exact(fam.twin.1.clone()),
                lo,
                hi,
            ]);
            if fam.cscs.is_none() {
                report.note("no constant-scalar values: requires beta > 5 alpha");
            }
            let mirror = MomentAffine::new(
                &alpha * &alpha + &beta * &beta,
                rati(0),
                fam.twin.1.clone(),
            );
            report.note(format!(
                "twin potentials share the profile: f = {} + ({}) y and its mirror {} + ({}) y",
                &alpha * &alpha + &beta * &beta,
                fam.twin.0,
                mirror.lambda,
                mirror.c2
            ));
            Ok(report)
        }
    }
}

fn check_open(v: &Rat, lo: i64, hi: i64, name: &str) -> Result<()> {
    if v <= &rati(lo) || v >= &rati(hi) {
        bail!("--{name} must lie strictly between {lo} and {hi}");
    }
    Ok(())
}

fn parse_range(spec: &str) -> Result<(Rat, Rat)> {
    let (lo, hi) = spec
        .split_once("..")
        .ok_or_else(|| anyhow!("range must be `lo..hi`"))?;
    let lo = parse_rat(lo).map_err(|e| anyhow!(e))?;
    let hi = parse_rat(hi).map_err(|e| anyhow!(e))?;
    if lo > hi {
        bail!("range must be increasing");
    }
    Ok((lo, hi))
}

fn grid(lo: &Rat, hi: &Rat, step: &Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut v = lo.clone();
    while &v <= hi {
        out.push(v.clone());
        v += step;
    }
    out
}
