//! Toric ansatze on quadrilaterals: Calabi trapezoids, orthotoric
//! quadrilaterals, and product rectangles. Profile fitting from labels, the
//! weighted scalar-curvature engine in chart coordinates, twin certificates,
//! the explicit constant-scalar family, and the product family on the
//! trivial bundle.
//!
//! Polynomial coefficients follow the descending convention of the closed
//! forms (`A_0` is the top coefficient); storage stays ascending and
//! [`coeff_desc`] translates.

use crate::hirzebruch::{self, HirzebruchError};
use crate::matrix::Matrix;
use crate::multipoly::MultiPoly;
use crate::polytope::AffineFunc;
use crate::ratfn::MRatFn;
use crate::roots::count_roots_in;
use crate::value::{isolate_params_in, ParamValue};
use crate::{rat, rati, Int, Rat, RatFn2, RatMPoly, RatPoly};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum QuadError {
    BadParams(&'static str),
    BadLabels(&'static str),
    Inconsistent(&'static str),
    NotExtremal,
    NotPositive(&'static str),
    Internal(&'static str),
    Surface(HirzebruchError),
}

impl From<HirzebruchError> for QuadError {
    fn from(e: HirzebruchError) -> Self {
        QuadError::Surface(e)
    }
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::BadParams(w) => write!(f, "bad parameters: {w}"),
            QuadError::BadLabels(w) => write!(f, "bad labels: {w}"),
            QuadError::Inconsistent(w) => write!(f, "inconsistent boundary system: {w}"),
            QuadError::NotExtremal => write!(f, "ansatz is not extremal"),
            QuadError::NotPositive(w) => write!(f, "positivity violated: {w}"),
            QuadError::Internal(w) => write!(f, "internal check failed: {w}"),
            QuadError::Surface(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for QuadError {}

type Result<T> = std::result::Result<T, QuadError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnsatzKind {
    Calabi,
    Orthotoric,
    Product,
}

/// Chart rectangle `[alpha1, alpha2] x [beta1, beta2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadParams {
    pub alpha1: Rat,
    pub alpha2: Rat,
    pub beta1: Rat,
    pub beta2: Rat,
}

impl QuadParams {
    pub fn new(alpha1: Rat, alpha2: Rat, beta1: Rat, beta2: Rat) -> Self {
        QuadParams {
            alpha1,
            alpha2,
            beta1,
            beta2,
        }
    }

    fn corners(&self) -> [(Rat, Rat); 4] {
        [
            (self.alpha1.clone(), self.beta1.clone()),
            (self.alpha1.clone(), self.beta2.clone()),
            (self.alpha2.clone(), self.beta1.clone()),
            (self.alpha2.clone(), self.beta2.clone()),
        ]
    }
}

/// Facet label constants; the compactification sign pattern is
/// `C_alpha1 > 0, C_alpha2 < 0, C_beta1 < 0, C_beta2 > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadLabels {
    pub c_alpha1: Rat,
    pub c_alpha2: Rat,
    pub c_beta1: Rat,
    pub c_beta2: Rat,
}

impl QuadLabels {
    pub fn new(c_alpha1: Rat, c_alpha2: Rat, c_beta1: Rat, c_beta2: Rat) -> Self {
        QuadLabels {
            c_alpha1,
            c_alpha2,
            c_beta1,
            c_beta2,
        }
    }

    fn check_signs(&self) -> Result<()> {
        if !self.c_alpha1.is_positive()
            || !self.c_alpha2.is_negative()
            || !self.c_beta1.is_negative()
            || !self.c_beta2.is_positive()
        {
            return Err(QuadError::BadLabels("sign pattern"));
        }
        Ok(())
    }
}

/// Paper-indexed coefficient: `coeff_desc(p, cap, j)` is the coefficient of
/// `t^(cap - j)`, so `j = 0` is the top slot of a degree-`cap` family.
pub fn coeff_desc(p: &RatPoly, cap: usize, j: usize) -> Rat {
    p.coeff(cap - j)
}

#[derive(Clone, Debug)]
pub struct CalabiAnsatz {
    pub params: QuadParams,
    pub labels: QuadLabels,
    pub a: RatPoly,
    pub b: RatPoly,
    pub positive_a: bool,
    pub positive_b: bool,
}

#[derive(Clone, Debug)]
pub struct OrthotoricAnsatz {
    pub params: QuadParams,
    pub labels: QuadLabels,
    pub a: RatPoly,
    pub b: RatPoly,
    pub positive_a: bool,
    pub positive_b: bool,
}

#[derive(Clone, Debug)]
pub struct ProductAnsatz {
    pub params: QuadParams,
    pub labels: QuadLabels,
    pub a: RatPoly,
    pub b: RatPoly,
    pub positive_a: bool,
    pub positive_b: bool,
    /// Homogeneous boundary solutions when the fit is under-determined
    /// (degree cap four); empty for the cubic fit.
    pub free_a: Vec<RatPoly>,
    pub free_b: Vec<RatPoly>,
}

#[derive(Clone, Debug)]
pub enum ToricAnsatz {
    Calabi(CalabiAnsatz),
    Orthotoric(OrthotoricAnsatz),
    Product(ProductAnsatz),
}

impl ToricAnsatz {
    pub fn kind(&self) -> AnsatzKind {
        match self {
            ToricAnsatz::Calabi(_) => AnsatzKind::Calabi,
            ToricAnsatz::Orthotoric(_) => AnsatzKind::Orthotoric,
            ToricAnsatz::Product(_) => AnsatzKind::Product,
        }
    }

    pub fn params(&self) -> &QuadParams {
        match self {
            ToricAnsatz::Calabi(a) => &a.params,
            ToricAnsatz::Orthotoric(a) => &a.params,
            ToricAnsatz::Product(a) => &a.params,
        }
    }

    pub fn profiles(&self) -> (&RatPoly, &RatPoly) {
        match self {
            ToricAnsatz::Calabi(a) => (&a.a, &a.b),
            ToricAnsatz::Orthotoric(a) => (&a.a, &a.b),
            ToricAnsatz::Product(a) => (&a.a, &a.b),
        }
    }
}

/// Fit result that distinguishes a structurally inconsistent boundary
/// system from an error.
#[derive(Clone, Debug)]
pub enum FitOutcome<T> {
    Fitted(T),
    Infeasible,
}

impl<T> FitOutcome<T> {
    pub fn fitted(self) -> Option<T> {
        match self {
            FitOutcome::Fitted(t) => Some(t),
            FitOutcome::Infeasible => None,
        }
    }
}

fn positive_on_open(p: &RatPoly, lo: &Rat, hi: &Rat) -> bool {
    let mid = (lo + hi) / rati(2);
    p.eval(&mid).is_positive() && count_roots_in(p, lo, hi) == 0
}

/// Boundary residuals of a profile: `p(e_i)` and `p'(e_i) - slope_i`.
fn boundary_residuals(p: &RatPoly, conds: &[(Rat, Rat, Rat)]) -> Vec<Rat> {
    // conds: (point, value, slope)
    let d = p.derivative();
    let mut out = Vec::new();
    for (pt, value, slope) in conds {
        out.push(p.eval(pt) - value);
        out.push(d.eval(pt) - slope);
    }
    out
}

// ---------------------------------------------------------------------------
// fits

/// Fit the Calabi trapezoid profile: `B` is the concave quadratic through
/// the `beta` boundary data (which forces `C_beta1 = -C_beta2`), `A` the
/// quartic with the `x^2` slot tied to `B''` by extremality.
pub fn calabi_fit(params: &QuadParams, labels: &QuadLabels) -> Result<CalabiAnsatz> {
    if !params.alpha1.is_positive() || params.alpha1 >= params.alpha2 {
        return Err(QuadError::BadParams("require 0 < alpha1 < alpha2"));
    }
    if params.beta1.is_negative() || params.beta1 >= params.beta2 {
        return Err(QuadError::BadParams("require 0 <= beta1 < beta2"));
    }
    labels.check_signs()?;
    if labels.c_beta1 != -labels.c_beta2.clone() {
        return Err(QuadError::BadLabels("extremal fit needs C_beta1 = -C_beta2"));
    }
    // B = -A2 (y - beta1)(y - beta2) with A2 = 2 / (C_beta1 (beta1 - beta2))
    let a2 = rati(2) / (&labels.c_beta1 * (&params.beta1 - &params.beta2));
    let b = RatPoly::new(vec![
        -&a2 * &params.beta1 * &params.beta2,
        &a2 * (&params.beta1 + &params.beta2),
        -a2.clone(),
    ]);
    // A = A0 x^4 + A1 x^3 + A2 x^2 + A3 x + A4 with four point/slope
    // conditions on the alpha edge; unknowns (A0, A1, A3, A4)
    let al1 = &params.alpha1;
    let al2 = &params.alpha2;
    let pow = |v: &Rat, k: u32| -> Rat {
        let mut acc = rati(1);
        for _ in 0..k {
            acc *= v;
        }
        acc
    };
    let rows = vec![
        vec![pow(al1, 4), pow(al1, 3), al1.clone(), rati(1)],
        vec![pow(al2, 4), pow(al2, 3), al2.clone(), rati(1)],
        vec![rati(4) * pow(al1, 3), rati(3) * pow(al1, 2), rati(1), rati(0)],
        vec![rati(4) * pow(al2, 3), rati(3) * pow(al2, 2), rati(1), rati(0)],
    ];
    let rhs = vec![
        -&a2 * pow(al1, 2),
        -&a2 * pow(al2, 2),
        rati(2) / &labels.c_alpha1 - rati(2) * &a2 * al1,
        rati(2) / &labels.c_alpha2 - rati(2) * &a2 * al2,
    ];
    let sol = Matrix::from_rows(rows)
        .solve(&rhs)
        .map_err(|_| QuadError::Inconsistent("alpha boundary system"))?;
    let a = RatPoly::new(vec![
        sol[3].clone(),
        sol[2].clone(),
        a2,
        sol[1].clone(),
        sol[0].clone(),
    ]);
    let positive_a = positive_on_open(&a, al1, al2);
    let positive_b = positive_on_open(&b, &params.beta1, &params.beta2);
    let ansatz = CalabiAnsatz {
        params: params.clone(),
        labels: labels.clone(),
        a,
        b,
        positive_a,
        positive_b,
    };
    debug_assert!(calabi_boundary_residuals(&ansatz).iter().all(Rat::is_zero));
    Ok(ansatz)
}

pub fn calabi_boundary_residuals(ansatz: &CalabiAnsatz) -> Vec<Rat> {
    let p = &ansatz.params;
    let l = &ansatz.labels;
    let mut out = boundary_residuals(
        &ansatz.a,
        &[
            (p.alpha1.clone(), rati(0), rati(2) / &l.c_alpha1),
            (p.alpha2.clone(), rati(0), rati(2) / &l.c_alpha2),
        ],
    );
    out.extend(boundary_residuals(
        &ansatz.b,
        &[
            (p.beta1.clone(), rati(0), rati(-2) / &l.c_beta1),
            (p.beta2.clone(), rati(0), rati(-2) / &l.c_beta2),
        ],
    ));
    out
}

impl CalabiAnsatz {
    /// Construct from explicit profile polynomials, deriving the labels
    /// from the boundary slopes and checking the extremal coupling
    /// `B'' = -2 A_2` and the vanishing conditions.
    pub fn from_polys(params: &QuadParams, a: RatPoly, b: RatPoly) -> Result<Self> {
        if a.degree().unwrap_or(0) > 4 || b.degree().unwrap_or(0) > 2 {
            return Err(QuadError::BadParams("degree caps are 4 and 2"));
        }
        for pt in [&params.alpha1, &params.alpha2] {
            if !a.eval(pt).is_zero() {
                return Err(QuadError::Inconsistent("A must vanish at the alpha edge"));
            }
        }
        for pt in [&params.beta1, &params.beta2] {
            if !b.eval(pt).is_zero() {
                return Err(QuadError::Inconsistent("B must vanish at the beta edge"));
            }
        }
        // B'' = 2 b_2 must equal -2 A_2
        if rati(2) * b.coeff(2) != rati(-2) * coeff_desc(&a, 4, 2) {
            return Err(QuadError::Inconsistent("extremal coupling B'' = -2 A2"));
        }
        let da = a.derivative();
        let db = b.derivative();
        let slopes = [
            da.eval(&params.alpha1),
            da.eval(&params.alpha2),
            db.eval(&params.beta1),
            db.eval(&params.beta2),
        ];
        if slopes.iter().any(Rat::is_zero) {
            return Err(QuadError::Inconsistent("vanishing boundary slope"));
        }
        let labels = QuadLabels::new(
            rati(2) / &slopes[0],
            rati(2) / &slopes[1],
            rati(-2) / &slopes[2],
            rati(-2) / &slopes[3],
        );
        let positive_a = positive_on_open(&a, &params.alpha1, &params.alpha2);
        let positive_b = positive_on_open(&b, &params.beta1, &params.beta2);
        Ok(CalabiAnsatz {
            params: params.clone(),
            labels,
            a,
            b,
            positive_a,
            positive_b,
        })
    }
}

/// Fit the coupled orthotoric pair; the eight boundary conditions
/// over-determine the seven coefficients, so a generic label choice is
/// reported as infeasible rather than an error.
pub fn ortho_fit(params: &QuadParams, labels: &QuadLabels) -> Result<FitOutcome<OrthotoricAnsatz>> {
    if params.beta1 >= params.beta2 || params.beta2 >= params.alpha1 || params.alpha1 >= params.alpha2
    {
        return Err(QuadError::BadParams("require beta1 < beta2 < alpha1 < alpha2"));
    }
    labels.check_signs()?;
    // unknowns (A0, A1, A2, A3, A4, B3, B4) with
    // B = -A0 y^4 - A1 y^3 - A2 y^2 + B3 y + B4
    let pow = |v: &Rat, k: u32| -> Rat {
        let mut acc = rati(1);
        for _ in 0..k {
            acc *= v;
        }
        acc
    };
    let a_point = |t: &Rat| -> Vec<Rat> {
        vec![pow(t, 4), pow(t, 3), pow(t, 2), t.clone(), rati(1), rati(0), rati(0)]
    };
    let a_slope = |t: &Rat| -> Vec<Rat> {
        vec![
            rati(4) * pow(t, 3),
            rati(3) * pow(t, 2),
            rati(2) * t,
            rati(1),
            rati(0),
            rati(0),
            rati(0),
        ]
    };
    let b_point = |t: &Rat| -> Vec<Rat> {
        vec![-pow(t, 4), -pow(t, 3), -pow(t, 2), rati(0), rati(0), t.clone(), rati(1)]
    };
    let b_slope = |t: &Rat| -> Vec<Rat> {
        vec![
            rati(-4) * pow(t, 3),
            rati(-3) * pow(t, 2),
            rati(-2) * t,
            rati(0),
            rati(0),
            rati(1),
            rati(0),
        ]
    };
    let rows = vec![
        a_point(&params.alpha1),
        a_point(&params.alpha2),
        a_slope(&params.alpha1),
        a_slope(&params.alpha2),
        b_point(&params.beta1),
        b_point(&params.beta2),
        b_slope(&params.beta1),
        b_slope(&params.beta2),
    ];
    let rhs = vec![
        rati(0),
        rati(0),
        rati(2) / &labels.c_alpha1,
        rati(2) / &labels.c_alpha2,
        rati(0),
        rati(0),
        rati(-2) / &labels.c_beta1,
        rati(-2) / &labels.c_beta2,
    ];
    let sol = Matrix::from_rows(rows).solve_general(&rhs);
    let Some(v) = sol.particular else {
        return Ok(FitOutcome::Infeasible);
    };
    let a = RatPoly::new(vec![
        v[4].clone(),
        v[3].clone(),
        v[2].clone(),
        v[1].clone(),
        v[0].clone(),
    ]);
    let b = RatPoly::new(vec![
        v[6].clone(),
        v[5].clone(),
        -v[2].clone(),
        -v[1].clone(),
        -v[0].clone(),
    ]);
    let positive_a = positive_on_open(&a, &params.alpha1, &params.alpha2);
    let positive_b = positive_on_open(&b, &params.beta1, &params.beta2);
    Ok(FitOutcome::Fitted(OrthotoricAnsatz {
        params: params.clone(),
        labels: labels.clone(),
        a,
        b,
        positive_a,
        positive_b,
    }))
}

/// Complete an orthotoric label set: choose the first three constants and
/// read the fourth off the boundary slope of the fitted pair.
pub fn ortho_complete_labels(
    params: &QuadParams,
    c_alpha1: &Rat,
    c_alpha2: &Rat,
    c_beta1: &Rat,
) -> Result<QuadLabels> {
    // solve the seven-condition system, dropping the B'(beta2) row
    let provisional = QuadLabels::new(c_alpha1.clone(), c_alpha2.clone(), c_beta1.clone(), rati(1));
    let pow = |v: &Rat, k: u32| -> Rat {
        let mut acc = rati(1);
        for _ in 0..k {
            acc *= v;
        }
        acc
    };
    let rows = vec![
        vec![pow(&params.alpha1, 4), pow(&params.alpha1, 3), pow(&params.alpha1, 2), params.alpha1.clone(), rati(1), rati(0), rati(0)],
        vec![pow(&params.alpha2, 4), pow(&params.alpha2, 3), pow(&params.alpha2, 2), params.alpha2.clone(), rati(1), rati(0), rati(0)],
        vec![rati(4) * pow(&params.alpha1, 3), rati(3) * pow(&params.alpha1, 2), rati(2) * &params.alpha1, rati(1), rati(0), rati(0), rati(0)],
        vec![rati(4) * pow(&params.alpha2, 3), rati(3) * pow(&params.alpha2, 2), rati(2) * &params.alpha2, rati(1), rati(0), rati(0), rati(0)],
        vec![-pow(&params.beta1, 4), -pow(&params.beta1, 3), -pow(&params.beta1, 2), rati(0), rati(0), params.beta1.clone(), rati(1)],
        vec![-pow(&params.beta2, 4), -pow(&params.beta2, 3), -pow(&params.beta2, 2), rati(0), rati(0), params.beta2.clone(), rati(1)],
        vec![rati(-4) * pow(&params.beta1, 3), rati(-3) * pow(&params.beta1, 2), rati(-2) * &params.beta1, rati(0), rati(0), rati(1), rati(0)],
    ];
    let rhs = vec![
        rati(0),
        rati(0),
        rati(2) / c_alpha1,
        rati(2) / c_alpha2,
        rati(0),
        rati(0),
        rati(-2) / c_beta1,
    ];
    let sol = Matrix::from_rows(rows).solve_general(&rhs);
    let v = sol
        .particular
        .ok_or(QuadError::Inconsistent("seven-condition orthotoric system"))?;
    let b = RatPoly::new(vec![
        v[6].clone(),
        v[5].clone(),
        -v[2].clone(),
        -v[1].clone(),
        -v[0].clone(),
    ]);
    let slope = b.derivative().eval(&params.beta2);
    if slope.is_zero() {
        return Err(QuadError::Inconsistent("vanishing completion slope"));
    }
    let c_beta2 = rati(-2) / slope;
    if !c_beta2.is_positive() {
        return Err(QuadError::BadLabels("completed label has the wrong sign"));
    }
    Ok(QuadLabels::new(
        provisional.c_alpha1,
        provisional.c_alpha2,
        provisional.c_beta1,
        c_beta2,
    ))
}

impl OrthotoricAnsatz {
    pub fn from_polys(params: &QuadParams, a: RatPoly, b: RatPoly) -> Result<Self> {
        if a.degree().unwrap_or(0) > 4 || b.degree().unwrap_or(0) > 4 {
            return Err(QuadError::BadParams("degree caps are 4 and 4"));
        }
        for j in 0..=2 {
            if coeff_desc(&b, 4, j) != -coeff_desc(&a, 4, j) {
                return Err(QuadError::Inconsistent("coupling B_j = -A_j for j <= 2"));
            }
        }
        for pt in [&params.alpha1, &params.alpha2] {
            if !a.eval(pt).is_zero() {
                return Err(QuadError::Inconsistent("A must vanish at the alpha edge"));
            }
        }
        for pt in [&params.beta1, &params.beta2] {
            if !b.eval(pt).is_zero() {
                return Err(QuadError::Inconsistent("B must vanish at the beta edge"));
            }
        }
        let da = a.derivative();
        let db = b.derivative();
        let slopes = [
            da.eval(&params.alpha1),
            da.eval(&params.alpha2),
            db.eval(&params.beta1),
            db.eval(&params.beta2),
        ];
        if slopes.iter().any(Rat::is_zero) {
            return Err(QuadError::Inconsistent("vanishing boundary slope"));
        }
        let labels = QuadLabels::new(
            rati(2) / &slopes[0],
            rati(2) / &slopes[1],
            rati(-2) / &slopes[2],
            rati(-2) / &slopes[3],
        );
        let positive_a = positive_on_open(&a, &params.alpha1, &params.alpha2);
        let positive_b = positive_on_open(&b, &params.beta1, &params.beta2);
        Ok(OrthotoricAnsatz {
            params: params.clone(),
            labels,
            a,
            b,
            positive_a,
            positive_b,
        })
    }
}

/// Degree cap for the product fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeCap {
    Cubic,
    Quartic,
}

/// Fit the product profiles under the requested degree cap. The cubic cap
/// has exactly zero free parameters; the quartic cap exposes one free
/// parameter per profile through the returned nullspaces.
pub fn product_fit(
    params: &QuadParams,
    labels: &QuadLabels,
    cap: DegreeCap,
) -> Result<ProductAnsatz> {
    if params.alpha1 >= params.alpha2 || params.beta1 >= params.beta2 {
        return Err(QuadError::BadParams("rectangle edges are ordered"));
    }
    labels.check_signs()?;
    let deg = match cap {
        DegreeCap::Cubic => 3usize,
        DegreeCap::Quartic => 4usize,
    };
    let fit_edge = |lo: &Rat, hi: &Rat, slope_lo: Rat, slope_hi: Rat| -> Result<(RatPoly, Vec<RatPoly>)> {
        let pow = |v: &Rat, k: usize| -> Rat {
            let mut acc = rati(1);
            for _ in 0..k {
                acc *= v;
            }
            acc
        };
        let point_row = |t: &Rat| -> Vec<Rat> { (0..=deg).map(|k| pow(t, k)).collect() };
        let slope_row = |t: &Rat| -> Vec<Rat> {
            (0..=deg)
                .map(|k| {
                    if k == 0 {
                        rati(0)
                    } else {
                        rati(k as i64) * pow(t, k - 1)
                    }
                })
                .collect()
        };
        let rows = vec![point_row(lo), point_row(hi), slope_row(lo), slope_row(hi)];
        let rhs = vec![rati(0), rati(0), slope_lo, slope_hi];
        let sol = Matrix::from_rows(rows).solve_general(&rhs);
        let v = sol
            .particular
            .ok_or(QuadError::Inconsistent("product boundary system"))?;
        Ok((
            RatPoly::new(v),
            sol.nullspace.into_iter().map(RatPoly::new).collect(),
        ))
    };
    let (a, free_a) = fit_edge(
        &params.alpha1,
        &params.alpha2,
        rati(2) / &labels.c_alpha1,
        rati(2) / &labels.c_alpha2,
    )?;
    let (b, free_b) = fit_edge(
        &params.beta1,
        &params.beta2,
        rati(-2) / &labels.c_beta1,
        rati(-2) / &labels.c_beta2,
    )?;
    let positive_a = positive_on_open(&a, &params.alpha1, &params.alpha2);
    let positive_b = positive_on_open(&b, &params.beta1, &params.beta2);
    Ok(ProductAnsatz {
        params: params.clone(),
        labels: labels.clone(),
        a,
        b,
        positive_a,
        positive_b,
        free_a,
        free_b,
    })
}

impl ProductAnsatz {
    pub fn from_polys(params: &QuadParams, a: RatPoly, b: RatPoly) -> Result<Self> {
        if a.degree().unwrap_or(0) > 4 || b.degree().unwrap_or(0) > 4 {
            return Err(QuadError::BadParams("degree cap is 4"));
        }
        for pt in [&params.alpha1, &params.alpha2] {
            if !a.eval(pt).is_zero() {
                return Err(QuadError::Inconsistent("A must vanish at the alpha edge"));
            }
        }
        for pt in [&params.beta1, &params.beta2] {
            if !b.eval(pt).is_zero() {
                return Err(QuadError::Inconsistent("B must vanish at the beta edge"));
            }
        }
        let da = a.derivative();
        let db = b.derivative();
        let slopes = [
            da.eval(&params.alpha1),
            da.eval(&params.alpha2),
            db.eval(&params.beta1),
            db.eval(&params.beta2),
        ];
        if slopes.iter().any(Rat::is_zero) {
            return Err(QuadError::Inconsistent("vanishing boundary slope"));
        }
        let labels = QuadLabels::new(
            rati(2) / &slopes[0],
            rati(2) / &slopes[1],
            rati(-2) / &slopes[2],
            rati(-2) / &slopes[3],
        );
        let positive_a = positive_on_open(&a, &params.alpha1, &params.alpha2);
        let positive_b = positive_on_open(&b, &params.beta1, &params.beta2);
        Ok(ProductAnsatz {
            params: params.clone(),
            labels,
            a,
            b,
            positive_a,
            positive_b,
            free_a: Vec::new(),
            free_b: Vec::new(),
        })
    }
}

// ---------------------------------------------------------------------------
// chart-coordinate metric data and the weighted scalar curvature

/// Exact metric data of a toric ansatz in chart coordinates `(x, y)`:
/// moment coordinates, inverse Hessian, scalar curvature, and the
/// Laplacians of the moment coordinates.
#[derive(Clone, Debug)]
pub struct ToricMetricData {
    pub kind: AnsatzKind,
    pub mu: [RatMPoly; 2],
    pub h: [[RatFn2; 2]; 2],
    pub scal: RatFn2,
    pub lap_mu: [RatFn2; 2],
    pub domain: QuadParams,
}

fn lift_x(p: &RatPoly) -> RatMPoly {
    let mut out = MultiPoly::zero(2);
    for (k, c) in p.coeffs().iter().enumerate() {
        out.insert_term(vec![k as u32, 0], c.clone());
    }
    out
}

fn lift_y(p: &RatPoly) -> RatMPoly {
    let mut out = MultiPoly::zero(2);
    for (k, c) in p.coeffs().iter().enumerate() {
        out.insert_term(vec![0, k as u32], c.clone());
    }
    out
}

pub fn metric_data(ansatz: &ToricAnsatz) -> ToricMetricData {
    let (a, b) = ansatz.profiles();
    let params = ansatz.params().clone();
    let ax = lift_x(a);
    let by = lift_y(b);
    let dax = lift_x(&a.derivative());
    let dby = lift_y(&b.derivative());
    let ddax = lift_x(&a.derivative().derivative());
    let ddby = lift_y(&b.derivative().derivative());
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let poly = MRatFn::from_poly;
    match ansatz.kind() {
        AnsatzKind::Calabi => {
            let den = MRatFn::from_poly(x.clone());
            let h11 = &poly(ax.clone()) / &den;
            let h12 = &poly(&y * &ax) / &den;
            let h22 = &poly(&(&(&x * &x) * &by) + &(&(&y * &y) * &ax)) / &den;
            let scal = &(-&poly(&ddax + &ddby)) / &den;
            let lap1 = &(-&poly(dax.clone())) / &den;
            let lap2 = &(-&poly(&(&y * &dax) + &(&x * &dby))) / &den;
            ToricMetricData {
                kind: AnsatzKind::Calabi,
                mu: [x.clone(), &x * &y],
                h: [[h11, h12.clone()], [h12, h22]],
                scal,
                lap_mu: [lap1, lap2],
                domain: params,
            }
        }
        AnsatzKind::Orthotoric => {
            let den = MRatFn::from_poly(&x - &y);
            let h11 = &poly(&ax + &by) / &den;
            let h12 = &poly(&(&y * &ax) + &(&x * &by)) / &den;
            let h22 = &poly(&(&(&y * &y) * &ax) + &(&(&x * &x) * &by)) / &den;
            let scal = &(-&poly(&ddax + &ddby)) / &den;
            let lap1 = &(-&poly(&dax + &dby)) / &den;
            let lap2 = &(-&poly(&(&y * &dax) + &(&x * &dby))) / &den;
            ToricMetricData {
                kind: AnsatzKind::Orthotoric,
                mu: [&x + &y, &x * &y],
                h: [[h11, h12.clone()], [h12, h22]],
                scal,
                lap_mu: [lap1, lap2],
                domain: params,
            }
        }
        AnsatzKind::Product => {
            let zero = MRatFn::from_poly(MultiPoly::zero(2));
            let h11 = poly(ax);
            let h22 = poly(by);
            let scal = -&poly(&ddax + &ddby);
            let lap1 = -&poly(dax);
            let lap2 = -&poly(dby);
            ToricMetricData {
                kind: AnsatzKind::Product,
                mu: [x, y],
                h: [[h11, zero.clone()], [zero, h22]],
                scal,
                lap_mu: [lap1, lap2],
                domain: params,
            }
        }
    }
}

/// Potential affine in the moment coordinates: `f = lambda + c1 mu1 + c2 mu2`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentAffine {
    pub lambda: Rat,
    pub c1: Rat,
    pub c2: Rat,
}

impl MomentAffine {
    pub fn new(lambda: Rat, c1: Rat, c2: Rat) -> Self {
        MomentAffine { lambda, c1, c2 }
    }

    pub fn chart_poly(&self, data: &ToricMetricData) -> RatMPoly {
        let mut f = MultiPoly::constant(2, self.lambda.clone());
        f = &f + &data.mu[0].scale(&self.c1);
        &f + &data.mu[1].scale(&self.c2)
    }

    /// Normalize so the largest-magnitude coefficient is one with positive
    /// sign; the scale of a potential is immaterial.
    pub fn normalized(&self) -> Self {
        let mut best = self.lambda.clone();
        for c in [&self.c1, &self.c2] {
            if c.abs() > best.abs() {
                best = c.clone();
            }
        }
        if best.is_zero() {
            return self.clone();
        }
        MomentAffine {
            lambda: &self.lambda / &best,
            c1: &self.c1 / &best,
            c2: &self.c2 / &best,
        }
    }
}

/// The weighted scalar curvature
/// `f^2 Scal - 2(p-1) f Lap(f) - p(p-1) |df|^2` as an exact rational
/// function in chart coordinates. `f` must be positive at the four chart
/// corners (affine functions attain extrema at vertices).
pub fn weighted_scal(data: &ToricMetricData, f: &MomentAffine, p: i64) -> Result<RatFn2> {
    for (cx, cy) in data.domain.corners() {
        let value = f.chart_poly(data).eval(&[cx, cy]);
        if !value.is_positive() {
            return Err(QuadError::NotPositive("potential at a chart corner"));
        }
    }
    let fp = MRatFn::from_poly(f.chart_poly(data));
    let lap_f = &data.lap_mu[0].scale(&f.c1) + &data.lap_mu[1].scale(&f.c2);
    let grad2 = &(&data.h[0][0].scale(&(&f.c1 * &f.c1))
        + &data.h[0][1].scale(&(rati(2) * &f.c1 * &f.c2)))
        + &data.h[1][1].scale(&(&f.c2 * &f.c2));
    let term1 = &(&fp * &fp) * &data.scal;
    let term2 = (&fp * &lap_f).scale(&rati(2 * (p - 1)));
    let term3 = grad2.scale(&rati(p * (p - 1)));
    Ok(&(&term1 - &term2) - &term3)
}

/// Exact decision of membership in `span{1, mu1, mu2}` by clearing the
/// denominator and solving the coefficient-matching linear system.
#[derive(Clone, Debug)]
pub struct AffineDecision {
    pub is_affine: bool,
    pub coeffs: MomentAffine,
    /// `num - den * fit` for the canonical partial fit; zero iff affine.
    pub residual: RatMPoly,
}

pub fn affine_in_moments(r: &RatFn2, data: &ToricMetricData) -> AffineDecision {
    let num = r.num().clone();
    let den = r.den().clone();
    let basis = [
        MRatFn::from_poly(den.clone()).num().clone(),
        &den * &data.mu[0],
        &den * &data.mu[1],
    ];
    // collect every monomial appearing anywhere
    let mut monos: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    for p in basis.iter().chain([&num]) {
        for (e, _) in p.terms() {
            monos.insert(e.clone());
        }
    }
    let rows: Vec<Vec<Rat>> = monos
        .iter()
        .map(|e| basis.iter().map(|b| b.coeff(e)).collect())
        .collect();
    let rhs: Vec<Rat> = monos.iter().map(|e| num.coeff(e)).collect();
    let m = Matrix::from_rows(rows.clone());
    let sol = m.solve_general(&rhs);
    let gamma = match sol.particular {
        Some(g) => g,
        None => {
            // canonical partial fit: first independent rows in monomial order
            let mut chosen_rows: Vec<Vec<Rat>> = Vec::new();
            let mut chosen_rhs: Vec<Rat> = Vec::new();
            for (row, b) in rows.iter().zip(&rhs) {
                let mut trial = chosen_rows.clone();
                trial.push(row.clone());
                let rank_grew = {
                    let m = Matrix::from_rows(trial.clone());
                    let s = m.solve_general(&vec![rati(0); trial.len()]);
                    (3 - s.nullspace.len()) > (3 - Matrix::from_rows(if chosen_rows.is_empty() { vec![vec![rati(0); 3]] } else { chosen_rows.clone() }).solve_general(&vec![rati(0); chosen_rows.len().max(1)]).nullspace.len())
                };
                if rank_grew {
                    chosen_rows.push(row.clone());
                    chosen_rhs.push(b.clone());
                }
                if chosen_rows.len() == 3 {
                    break;
                }
            }
            Matrix::from_rows(chosen_rows.clone())
                .solve_general(&chosen_rhs)
                .particular
                .unwrap_or_else(|| vec![rati(0); 3])
        }
    };
    let fit = MomentAffine::new(gamma[0].clone(), gamma[1].clone(), gamma[2].clone());
    let combo = &(&basis[0].scale(&fit.lambda) + &basis[1].scale(&fit.c1))
        + &basis[2].scale(&fit.c2);
    let residual = &num - &combo;
    AffineDecision {
        is_affine: residual.is_zero(),
        coeffs: fit,
        residual,
    }
}

// ---------------------------------------------------------------------------
// twin certificates

/// A verified twin potential: the affine potential, the exactly-zero
/// condition residuals, and the verdicts.
#[derive(Clone, Debug)]
pub struct TwinCertificate {
    pub f: MomentAffine,
    pub conditions: Vec<Rat>,
    pub positive: bool,
    pub verified_affine: bool,
}

/// Search for the extremal Sasaki twin of an extremal ansatz. Returns
/// `None` when only the trivial (constant) potential exists or no positive
/// representative does; rejects non-extremal input.
pub fn find_twin(ansatz: &ToricAnsatz) -> Result<Option<TwinCertificate>> {
    let data = metric_data(ansatz);
    let scal_check = affine_in_moments(&data.scal, &data);
    if !scal_check.is_affine {
        return Err(QuadError::NotExtremal);
    }
    let (a, b) = ansatz.profiles();
    let direction = match ansatz.kind() {
        AnsatzKind::Calabi => {
            let a3 = coeff_desc(a, 4, 3);
            let a4 = coeff_desc(a, 4, 4);
            if a3.is_zero() && a4.is_zero() {
                return Err(QuadError::Internal(
                    "A3 = A4 = 0 contradicts the boundary conditions",
                ));
            }
            if a3.is_zero() {
                return Ok(None);
            }
            MomentAffine::new(rati(2) * a4, a3, rati(0))
        }
        AnsatzKind::Orthotoric => {
            let s3 = coeff_desc(a, 4, 3) + coeff_desc(b, 4, 3);
            let s4 = coeff_desc(a, 4, 4) + coeff_desc(b, 4, 4);
            if s3.is_zero() && s4.is_zero() {
                return Err(QuadError::Internal(
                    "A3 + B3 = A4 + B4 = 0 contradicts the boundary conditions",
                ));
            }
            if s3.is_zero() {
                return Ok(None);
            }
            MomentAffine::new(rati(2) * s4, s3, rati(0))
        }
        AnsatzKind::Product => {
            let a0 = coeff_desc(a, 3, 0);
            let b0 = coeff_desc(b, 3, 0);
            let m1 = coeff_desc(a, 3, 1) + coeff_desc(b, 3, 1);
            if a0.is_zero() && b0.is_zero() {
                return Ok(None);
            }
            if !a0.is_zero() {
                MomentAffine::new(&a0 * &m1, rati(3) * &a0 * &a0, rati(3) * &a0 * &b0)
            } else {
                MomentAffine::new(m1, rati(0), rati(3) * &b0)
            }
        }
    };
    if direction.c1.is_zero() && direction.c2.is_zero() {
        return Ok(None);
    }
    let conditions = twin_condition_residuals(ansatz, &direction);
    if conditions.iter().any(|r| !r.is_zero()) {
        return Err(QuadError::Internal("twin conditions not satisfied"));
    }
    // choose the sign making f positive at the chart corners, if any
    let candidate = 'sign: {
        for flip in [rati(1), rati(-1)] {
            let f = MomentAffine::new(
                &direction.lambda * &flip,
                &direction.c1 * &flip,
                &direction.c2 * &flip,
            );
            let ok = data.domain.corners().iter().all(|(cx, cy)| {
                f.chart_poly(&data)
                    .eval(&[cx.clone(), cy.clone()])
                    .is_positive()
            });
            if ok {
                break 'sign Some(f);
            }
        }
        None
    };
    let Some(f) = candidate else {
        return Ok(None);
    };
    let wscal = weighted_scal(&data, &f, 4)?;
    let verified = affine_in_moments(&wscal, &data);
    if !verified.is_affine {
        return Err(QuadError::Internal("weighted curvature is not affine"));
    }
    Ok(Some(TwinCertificate {
        f: f.normalized(),
        conditions,
        positive: true,
        verified_affine: verified.is_affine,
    }))
}

/// The defining twin conditions evaluated at a candidate potential.
pub fn twin_condition_residuals(ansatz: &ToricAnsatz, f: &MomentAffine) -> Vec<Rat> {
    let (a, b) = ansatz.profiles();
    match ansatz.kind() {
        AnsatzKind::Calabi => vec![
            coeff_desc(a, 4, 3) * &f.lambda - rati(2) * &f.c1 * coeff_desc(a, 4, 4),
            f.c2.clone(),
        ],
        AnsatzKind::Orthotoric => vec![
            (coeff_desc(a, 4, 3) + coeff_desc(b, 4, 3)) * &f.lambda
                - rati(2) * &f.c1 * (coeff_desc(a, 4, 4) + coeff_desc(b, 4, 4)),
            f.c2.clone(),
        ],
        AnsatzKind::Product => {
            let a0 = coeff_desc(a, 3, 0);
            let b0 = coeff_desc(b, 3, 0);
            let m1 = coeff_desc(a, 3, 1) + coeff_desc(b, 3, 1);
            vec![
                &a0 * &f.c2 - &b0 * &f.c1,
                rati(3) * &a0 * &f.lambda - &f.c1 * &m1,
                rati(3) * &b0 * &f.lambda - &f.c2 * &m1,
            ]
        }
    }
}

// ---------------------------------------------------------------------------
// the explicit constant-scalar twin family

#[derive(Clone, Debug)]
pub struct CscsFamily {
    pub ansatz: CalabiAnsatz,
    pub certificate: TwinCertificate,
    /// The constant scalar curvature `12 (a1 + a2) / (a1^2 (a2 - a1) C)`.
    pub scal: Rat,
    /// Both rays have constant scalar curvature: the weighted curvature of
    /// the twin equals `scal * f` exactly.
    pub both_cscs: bool,
}

/// Build the explicit family over the trapezoid with rectangle
/// `[alpha1, alpha2] x [0, 1]` and verify both constant-scalar claims.
pub fn cscs_twin_family(alpha1: &Rat, alpha2: &Rat, c_label: &Rat) -> Result<CscsFamily> {
    if !alpha1.is_positive() || alpha1 >= alpha2 {
        return Err(QuadError::BadParams("require 0 < alpha1 < alpha2"));
    }
    if !c_label.is_positive() {
        return Err(QuadError::BadParams("require C > 0"));
    }
    let params = QuadParams::new(alpha1.clone(), alpha2.clone(), rati(0), rati(1));
    let quad_sum = alpha1 * alpha1 + rati(3) * alpha1 * alpha2 + alpha2 * alpha2;
    let c_beta2 = alpha1 * alpha1 * (alpha2 - alpha1) * c_label / &quad_sum;
    let labels = QuadLabels::new(
        c_label.clone(),
        -(alpha1 * alpha1 * c_label) / (alpha2 * alpha2),
        -c_beta2.clone(),
        c_beta2,
    );
    let ansatz = calabi_fit(&params, &labels)?;
    // the fitted A must be the printed cubic
    let scale = rati(2) / (alpha1 * alpha1 * (alpha2 - alpha1) * c_label);
    let printed_a = (&(&RatPoly::new(vec![-alpha1.clone(), rati(1)])
        * &RatPoly::new(vec![alpha2.clone(), rati(-1)]))
        * &RatPoly::new(vec![-(alpha1 * alpha2), alpha1 + alpha2]))
        .scale(&scale);
    if ansatz.a != printed_a {
        return Err(QuadError::Internal("fit disagrees with the closed form"));
    }
    let printed_b = (&RatPoly::new(vec![rati(0), rati(1)])
        * &RatPoly::new(vec![rati(1), rati(-1)]))
        .scale(&(&quad_sum * &scale));
    if ansatz.b != printed_b {
        return Err(QuadError::Internal("fit disagrees with the closed form"));
    }
    let scal = rati(12) * (alpha1 + alpha2) / (alpha1 * alpha1 * (alpha2 - alpha1) * c_label);
    let data = metric_data(&ToricAnsatz::Calabi(ansatz.clone()));
    let scal_decide = affine_in_moments(&data.scal, &data);
    if !(scal_decide.is_affine
        && scal_decide.coeffs.c1.is_zero()
        && scal_decide.coeffs.c2.is_zero()
        && scal_decide.coeffs.lambda == scal)
    {
        return Err(QuadError::Internal("scalar curvature is not the printed constant"));
    }
    let certificate = find_twin(&ToricAnsatz::Calabi(ansatz.clone()))?
        .ok_or(QuadError::Internal("explicit family lost its twin"))?;
    // the printed potential f = -1 + (alpha1 + alpha2)/(alpha1 alpha2) x
    let f = MomentAffine::new(rati(-1), (alpha1 + alpha2) / (alpha1 * alpha2), rati(0));
    let wscal = weighted_scal(&data, &f, 4)?;
    let expect = &data_to_fn(&data, &f).scale(&scal) - &MRatFn::from_poly(MultiPoly::zero(2));
    let both_cscs = wscal == expect;
    Ok(CscsFamily {
        ansatz,
        certificate,
        scal,
        both_cscs,
    })
}

fn data_to_fn(data: &ToricMetricData, f: &MomentAffine) -> RatFn2 {
    MRatFn::from_poly(f.chart_poly(data))
}

/// Coprime lattice labels for the family: integers with
/// `-k3/k4 = alpha/(1 + 3 alpha + alpha^2)` in lowest terms and `k1 = k3`,
/// `k2 = k4`.
pub fn lattice_labels(alpha: &Rat) -> Result<(Int, Int, Int, Int)> {
    if alpha <= &rati(1) {
        return Err(QuadError::BadParams("require alpha > 1"));
    }
    let p = alpha.numer().clone();
    let q = alpha.denom().clone();
    let num = &p * &q;
    let den = &p * &p + Int::from(3) * &p * &q + &q * &q;
    let g = num.gcd(&den);
    let k3 = -(num / &g);
    let k4 = den / g;
    Ok((k3.clone(), k4.clone(), k3, k4))
}

/// The affine labels of the family polytope in the chart `(u, v)`, for the
/// normalized trapezoid `alpha1 = 1, alpha2 = alpha, beta1 = 0, beta2 = beta`.
pub fn cscs_family_affine_labels(alpha: &Rat, c_label: &Rat) -> [AffineFunc; 4] {
    let f_alpha = (alpha - rati(1)) / (rati(1) + rati(3) * alpha + alpha * alpha);
    let cf = c_label * &f_alpha;
    [
        AffineFunc::new(vec![c_label.clone(), rati(0)], -c_label.clone()),
        AffineFunc::new(vec![rati(0), cf.clone()], rati(0)),
        AffineFunc::new(vec![-(c_label / alpha), rati(0)], c_label.clone()),
        AffineFunc::new(vec![cf.clone(), -cf], rati(0)),
    ]
}

// ---------------------------------------------------------------------------
// the product family on the trivial bundle

#[derive(Clone, Debug)]
pub struct LebrunProduct {
    pub ansatz: ProductAnsatz,
    /// Weighted curvature of `f = alpha^2 + beta^2 + c y` at weight four,
    /// affine in `y`: `(constant, y-coefficient)`.
    pub wscal_affine: (Rat, Rat),
    /// The twin pair of potential slopes.
    pub twin: (Rat, Rat),
    /// Constant-scalar parameter values, present exactly when
    /// `beta > 5 alpha`.
    pub cscs: Option<(ParamValue, ParamValue)>,
}

/// Profile polynomials of the product family.
pub fn lebrun_profiles(alpha: &Rat, beta: &Rat, c: &Rat) -> Result<(RatPoly, RatPoly)> {
    if !alpha.is_positive() || !beta.is_positive() {
        return Err(QuadError::BadParams("require alpha, beta > 0"));
    }
    let sum2 = alpha * alpha + beta * beta;
    if c * c * beta * beta >= &sum2 * &sum2 {
        return Err(QuadError::BadParams("require c^2 beta^2 < (alpha^2 + beta^2)^2"));
    }
    let a = RatPoly::new(vec![alpha.clone(), rati(0), -(rati(1) / alpha)]);
    // B = (beta^2 - y^2)(6 alpha (a^2+b^2)^2 + (beta - alpha) c^2 beta^2
    //      - (alpha + beta) c^2 y^2) / (2 alpha beta (3 (a^2+b^2)^2 - b^2 c^2))
    let den = rati(2) * alpha * beta * (rati(3) * &sum2 * &sum2 - beta * beta * c * c);
    let inner = RatPoly::new(vec![
        rati(6) * alpha * &sum2 * &sum2 + (beta - alpha) * c * c * beta * beta,
        rati(0),
        -((alpha + beta) * c * c),
    ]);
    let outer = RatPoly::new(vec![beta * beta, rati(0), rati(-1)]);
    let b = (&outer * &inner).div_scalar(&den);
    Ok((a, b))
}

/// Printed affine coefficients of the weighted curvature of the family.
pub fn lebrun_printed_wscal(alpha: &Rat, beta: &Rat, c: &Rat) -> (Rat, Rat) {
    let sum2 = alpha * alpha + beta * beta;
    let den = alpha * beta * (rati(3) * &sum2 * &sum2 - beta * beta * c * c);
    let pow4 = &sum2 * &sum2 * &sum2 * &sum2;
    let u0 = rati(6)
        * ((alpha + beta) * &pow4 - rati(6) * alpha * beta * beta * &sum2 * &sum2 * c * c
            + (alpha - beta) * beta * beta * beta * beta * c * c * c * c)
        / &den;
    let u1 = rati(-12)
        * c
        * (&sum2 * ((rati(2) * alpha - beta) * &sum2 * &sum2 + beta * beta * beta * c * c))
        / &den;
    (u0, u1)
}

pub fn product_lebrun(alpha: &Rat, beta: &Rat, c: &Rat) -> Result<LebrunProduct> {
    let (a, b) = lebrun_profiles(alpha, beta, c)?;
    let params = QuadParams::new(-alpha.clone(), alpha.clone(), -beta.clone(), beta.clone());
    let ansatz = ProductAnsatz::from_polys(&params, a, b)?;
    if !(ansatz.positive_a && ansatz.positive_b) {
        return Err(QuadError::NotPositive("family profile"));
    }
    let sum2 = alpha * alpha + beta * beta;
    let data = metric_data(&ToricAnsatz::Product(ansatz.clone()));
    let f = MomentAffine::new(sum2.clone(), rati(0), c.clone());
    let wscal = weighted_scal(&data, &f, 4)?;
    let poly = wscal
        .to_polynomial()
        .ok_or(QuadError::Internal("weighted curvature should be polynomial"))?;
    // affine in y and independent of x
    if poly.degree_in(0) != 0 || poly.degree_in(1) > 1 {
        return Err(QuadError::Internal("weighted curvature should be affine in y"));
    }
    let u0 = poly.coeff(&[0, 0]);
    let u1 = poly.coeff(&[0, 1]);
    let cscs = {
        let k_num = (beta - rati(5) * alpha) * &sum2 * &sum2;
        let k_den = (beta - alpha) * beta * beta;
        if beta > &(rati(5) * alpha) {
            let k = k_num / k_den;
            // roots of t^2 - k
            let q = RatPoly::new(vec![-k, rati(0), rati(1)]);
            let bound = crate::roots::root_bound(&q);
            let roots = isolate_params_in(&q, &(-bound.clone()), &bound);
            if roots.len() == 2 {
                let mut it = roots.into_iter();
                Some((it.next().unwrap(), it.next().unwrap()))
            } else {
                return Err(QuadError::Internal("expected two constant-scalar values"));
            }
        } else {
            None
        }
    };
    Ok(LebrunProduct {
        ansatz,
        wscal_affine: (u0, u1),
        twin: (c.clone(), -c.clone()),
        cscs,
    })
}

// ---------------------------------------------------------------------------
// fiber-profile bridge to the surface module

/// The admissible fiber profile of the `n`-twisted surface with class
/// parameter `x`, recast as a Calabi trapezoid ansatz on
/// `[1 - x, 1 + x] x [0, n/x]` via the affine chart change
/// `x_chart = 1 + x z`, `B(v) = 2v - (2x/n) v^2`.
pub fn hirzebruch_calabi_ansatz(twist: u32, x: &Rat) -> Result<CalabiAnsatz> {
    if !(x > &rati(0) && x < &rati(1)) {
        return Err(QuadError::BadParams("require x in (0, 1)"));
    }
    let s = rat(2, twist as i64);
    let profile = hirzebruch::profile(&s, x, &rati(0))?;
    // A(u) = x^2 F((u - 1)/x)
    let inner = RatPoly::new(vec![-(rati(1) / x), rati(1) / x]);
    let a = profile.f.compose(&inner).scale(&(x * x));
    let n_over_x = rati(twist as i64) / x;
    let b = RatPoly::new(vec![rati(0), rati(2), rati(-2) * x / rati(twist as i64)]);
    let params = QuadParams::new(rati(1) - x, rati(1) + x, rati(0), n_over_x);
    CalabiAnsatz::from_polys(&params, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hirzebruch::twin_b_of_a;

    fn family_example() -> CscsFamily {
        cscs_twin_family(&rati(1), &rati(2), &rati(1)).unwrap()
    }

    #[test]
    fn family_at_one_two_one() {
        let fam = family_example();
        assert_eq!(fam.scal, rati(36));
        assert!(fam.both_cscs);
        assert!(fam.ansatz.positive_a && fam.ansatz.positive_b);
        // certificate proportional to (-1, 3/2): normalized so the largest
        // magnitude coefficient is +1
        let f = &fam.certificate.f;
        assert_eq!((&f.lambda, &f.c1), (&rat(-2, 3), &rati(1)));
        assert!(f.c2.is_zero());
    }

    #[test]
    fn family_boundary_conditions_exact() {
        let fam = family_example();
        assert!(calabi_boundary_residuals(&fam.ansatz).iter().all(Rat::is_zero));
    }

    #[test]
    fn family_scaling_in_label() {
        // scaling C by t scales Scal by 1/t and keeps the twin potential
        let f1 = cscs_twin_family(&rati(1), &rati(3), &rati(1)).unwrap();
        let f2 = cscs_twin_family(&rati(1), &rati(3), &rati(4)).unwrap();
        assert_eq!(f1.scal, f2.scal * rati(4));
        assert_eq!(f1.certificate.f, f2.certificate.f);
    }

    #[test]
    fn lattice_label_examples() {
        let (_, _, k3, k4) = lattice_labels(&rati(2)).unwrap();
        assert_eq!((k3, k4), (Int::from(-2), Int::from(11)));
        let (_, _, k3, k4) = lattice_labels(&rati(3)).unwrap();
        assert_eq!((k3, k4), (Int::from(-3), Int::from(19)));
    }

    #[test]
    fn lattice_labels_kill_the_affine_relation() {
        for alpha in [rati(2), rat(7, 3), rat(22, 5)] {
            let (k1, k2, k3, k4) = lattice_labels(&alpha).unwrap();
            let ells = cscs_family_affine_labels(&alpha, &rat(5, 7));
            let ks = [k1, k2, k3, k4];
            // sum k_i l_i = 0 as an affine function
            for probe in [
                vec![rati(0), rati(0)],
                vec![rati(1), rati(2)],
                vec![rat(-3, 2), rat(5, 9)],
            ] {
                let total: Rat = ks
                    .iter()
                    .zip(&ells)
                    .map(|(k, l)| Rat::from_integer(k.clone()) * l.eval(&probe))
                    .sum();
                assert!(total.is_zero(), "alpha={alpha}");
            }
        }
    }

    #[test]
    fn calabi_scal_closed_form() {
        let fam = family_example();
        let data = metric_data(&ToricAnsatz::Calabi(fam.ansatz.clone()));
        // extremal Calabi: Scal = -12 A0 x - 6 A1 (here A0 = 0)
        let d = affine_in_moments(&data.scal, &data);
        assert!(d.is_affine);
        let a0 = coeff_desc(&fam.ansatz.a, 4, 0);
        let a1 = coeff_desc(&fam.ansatz.a, 4, 1);
        assert_eq!(d.coeffs.lambda, rati(-6) * a1);
        assert_eq!(d.coeffs.c1, rati(-12) * a0);
        assert!(d.coeffs.c2.is_zero());
    }

    #[test]
    fn ke_calabi_has_no_twin() {
        // synthetic ansatz with A0 = A3 = 0: A = A1 x^3 + A2 x^2 + A4
        // vanishing at 1 and 2: A1 = -(A2 + ...)
        // pick A2 = 1 then solve two linear conditions for (A1, A4)
        let m = Matrix::from_rows(vec![vec![rati(1), rati(1)], vec![rati(8), rati(1)]]);
        let rhs = vec![rati(-1), rati(-4)];
        let v = m.solve(&rhs).unwrap();
        let a = RatPoly::new(vec![v[1].clone(), rati(0), rati(1), v[0].clone()]);
        assert!(a.eval(&rati(1)).is_zero() && a.eval(&rati(2)).is_zero());
        let b = RatPoly::new(vec![rati(0), rati(3), rati(-1)]); // -y^2 + 3y, B'' = -2 A2
        let params = QuadParams::new(rati(1), rati(2), rati(0), rati(3));
        let ansatz = CalabiAnsatz::from_polys(&params, a, b).unwrap();
        assert!(coeff_desc(&ansatz.a, 4, 0).is_zero());
        assert!(coeff_desc(&ansatz.a, 4, 3).is_zero());
        let got = find_twin(&ToricAnsatz::Calabi(ansatz)).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn csc_product_has_no_twin() {
        // round x round: cubic fit with symmetric labels gives A0 = B0 = 0
        let params = QuadParams::new(rati(-1), rati(1), rati(-2), rati(2));
        let labels = QuadLabels::new(rati(1), rati(-1), rati(-1), rati(1));
        let ansatz = product_fit(&params, &labels, DegreeCap::Cubic).unwrap();
        assert!(coeff_desc(&ansatz.a, 3, 0).is_zero());
        assert!(coeff_desc(&ansatz.b, 3, 0).is_zero());
        assert!(ansatz.free_a.is_empty());
        let got = find_twin(&ToricAnsatz::Product(ansatz)).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn product_round_profile() {
        // alpha1 = -alpha, alpha2 = alpha with unit labels gives
        // A = (alpha^2 - x^2)/alpha
        let alpha = rat(3, 2);
        let params = QuadParams::new(-alpha.clone(), alpha.clone(), rati(-1), rati(1));
        let labels = QuadLabels::new(rati(1), rati(-1), rati(-1), rati(1));
        let ansatz = product_fit(&params, &labels, DegreeCap::Cubic).unwrap();
        let expect = RatPoly::new(vec![alpha.clone(), rati(0), -(rati(1) / &alpha)]);
        assert_eq!(ansatz.a, expect);
    }

    #[test]
    fn product_quartic_fit_has_free_parameters() {
        let params = QuadParams::new(rati(-1), rati(1), rati(-1), rati(1));
        let labels = QuadLabels::new(rati(1), rati(-1), rati(-1), rati(1));
        let ansatz = product_fit(&params, &labels, DegreeCap::Quartic).unwrap();
        assert_eq!(ansatz.free_a.len(), 1);
        assert_eq!(ansatz.free_b.len(), 1);
        // the free directions satisfy the homogeneous boundary conditions
        for free in &ansatz.free_a {
            assert!(free.eval(&rati(-1)).is_zero());
            assert!(free.eval(&rati(1)).is_zero());
            assert!(free.derivative().eval(&rati(1)).is_zero());
        }
    }

    #[test]
    fn ortho_fit_feasible_and_coupled() {
        let params = QuadParams::new(rati(2), rati(4), rati(0), rati(1));
        let labels = ortho_complete_labels(&params, &rati(1), &rat(-1, 2), &rati(-1)).unwrap();
        let ansatz = ortho_fit(&params, &labels).unwrap().fitted().unwrap();
        for j in 0..=2 {
            assert_eq!(coeff_desc(&ansatz.b, 4, j), -coeff_desc(&ansatz.a, 4, j));
        }
        // all eight boundary conditions hold exactly
        let da = ansatz.a.derivative();
        let db = ansatz.b.derivative();
        assert!(ansatz.a.eval(&params.alpha1).is_zero());
        assert!(ansatz.a.eval(&params.alpha2).is_zero());
        assert!(ansatz.b.eval(&params.beta1).is_zero());
        assert!(ansatz.b.eval(&params.beta2).is_zero());
        assert_eq!(da.eval(&params.alpha1), rati(2) / &labels.c_alpha1);
        assert_eq!(da.eval(&params.alpha2), rati(2) / &labels.c_alpha2);
        assert_eq!(db.eval(&params.beta1), rati(-2) / &labels.c_beta1);
        assert_eq!(db.eval(&params.beta2), rati(-2) / &labels.c_beta2);
    }

    #[test]
    fn ortho_generic_labels_infeasible() {
        let params = QuadParams::new(rati(2), rati(4), rati(0), rati(1));
        let labels = QuadLabels::new(rati(1), rati(-1), rati(-1), rati(1));
        match ortho_fit(&params, &labels).unwrap() {
            FitOutcome::Infeasible => {}
            FitOutcome::Fitted(_) => panic!("generic labels should be infeasible"),
        }
    }

    #[test]
    fn ke_orthotoric_has_no_twin() {
        // A0 = 0 and B3 = -A3: pick A = A1 x^3 + A2 x^2 + A3 x + A4 with
        // A(2) = A(4) = 0, B = -A1 y^3 - A2 y^2 - A3 y + B4 with B(0) = B(1) = 0
        // unknowns (A1, A2, A3, A4, B4): B(0) = B4 = 0, B(1) = -A1 - A2 - A3
        let m = Matrix::from_rows(vec![
            vec![rati(8), rati(4), rati(2), rati(1), rati(0)],
            vec![rati(64), rati(16), rati(4), rati(1), rati(0)],
            vec![rati(0), rati(0), rati(0), rati(0), rati(1)],
            vec![rati(-1), rati(-1), rati(-1), rati(0), rati(1)],
        ]);
        let sol = m.solve_general(&vec![rati(0); 4]);
        let dir = sol
            .nullspace
            .into_iter()
            .find(|v| !v.iter().all(Rat::is_zero))
            .unwrap();
        let a = RatPoly::new(vec![dir[3].clone(), dir[2].clone(), dir[1].clone(), dir[0].clone()]);
        let b = RatPoly::new(vec![
            dir[4].clone(),
            -dir[2].clone(),
            -dir[1].clone(),
            -dir[0].clone(),
        ]);
        let params = QuadParams::new(rati(2), rati(4), rati(0), rati(1));
        let ansatz = OrthotoricAnsatz::from_polys(&params, a, b).unwrap();
        let got = find_twin(&ToricAnsatz::Orthotoric(ansatz)).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn calabi_weighted_scal_y2_obstruction() {
        // for c2 != 0 the weighted curvature fails to be affine and the y^2
        // part of the residual carries c2^2 (-6 A3 - 12 A4 / x)
        let fam = family_example();
        let data = metric_data(&ToricAnsatz::Calabi(fam.ansatz.clone()));
        let f = MomentAffine::new(rati(20), rati(1), rat(1, 3));
        let w = weighted_scal(&data, &f, 4).unwrap();
        let d = affine_in_moments(&w, &data);
        assert!(!d.is_affine);
        // the y^2 coefficient of the weighted curvature, as a function of
        // x, is c2^2 (-6 A3 - 12 A4 / x); compare rational functions so the
        // denominator normalization drops out
        let y2_num = w.num().coeffs_in(1).remove(&2).unwrap();
        let y2_fn = MRatFn::new(y2_num, w.den().clone());
        let a3 = coeff_desc(&fam.ansatz.a, 4, 3);
        let a4 = coeff_desc(&fam.ansatz.a, 4, 4);
        let c2sq = rat(1, 9);
        let x = MultiPoly::var(2, 0);
        let mut num = MultiPoly::zero(2);
        num.insert_term(vec![1, 0], rati(-6) * &a3 * &c2sq);
        num.insert_term(vec![0, 0], rati(-12) * &a4 * &c2sq);
        let expect = MRatFn::new(num, x);
        assert!(y2_fn == expect);
    }

    #[test]
    fn orthotoric_diagonal_vanishing_identity() {
        // with c2 = 0, g(x,x) = 6 c1 (lambda (A3+B3) - 2 c1 (A4+B4))
        let params = QuadParams::new(rati(2), rati(4), rati(0), rati(1));
        let labels = ortho_complete_labels(&params, &rati(1), &rat(-1, 2), &rati(-1)).unwrap();
        let ansatz = ortho_fit(&params, &labels).unwrap().fitted().unwrap();
        let data = metric_data(&ToricAnsatz::Orthotoric(ansatz.clone()));
        let f = MomentAffine::new(rati(30), rati(1), rati(0));
        let w = weighted_scal(&data, &f, 4).unwrap();
        // g(x, y) = w * (x - y); evaluate on the diagonal
        let xmy = MRatFn::from_poly(&MultiPoly::var(2, 0) - &MultiPoly::var(2, 1));
        let g = &w * &xmy;
        let gp = g.to_polynomial().expect("clears the diagonal denominator");
        let diag = gp.substitute(1, &MultiPoly::var(2, 0));
        let s3 = coeff_desc(&ansatz.a, 4, 3) + coeff_desc(&ansatz.b, 4, 3);
        let s4 = coeff_desc(&ansatz.a, 4, 4) + coeff_desc(&ansatz.b, 4, 4);
        let expect = rati(6) * rati(1) * (rati(30) * s3 - rati(2) * s4);
        assert!(diag.is_constant());
        assert_eq!(diag.constant_value(), expect);
    }

    #[test]
    fn product_lebrun_matches_printed_curvature() {
        for (alpha, beta, c) in [
            (rati(1), rati(2), rati(1)),
            (rati(1), rati(6), rat(3, 2)),
            (rat(1, 2), rati(4), rat(-2, 3)),
        ] {
            let fam = product_lebrun(&alpha, &beta, &c).unwrap();
            let (u0, u1) = lebrun_printed_wscal(&alpha, &beta, &c);
            assert_eq!(fam.wscal_affine, (u0, u1), "alpha={alpha} beta={beta} c={c}");
            // B is even in c
            let (_, b_plus) = lebrun_profiles(&alpha, &beta, &c).unwrap();
            let (_, b_minus) = lebrun_profiles(&alpha, &beta, &(-c.clone())).unwrap();
            assert_eq!(b_plus, b_minus);
        }
    }

    #[test]
    fn product_lebrun_cscs_threshold() {
        // beta <= 5 alpha: no constant-scalar values
        let fam = product_lebrun(&rati(1), &rati(4), &rati(1)).unwrap();
        assert!(fam.cscs.is_none());
        // (alpha, beta) = (1, 6): c^2 = 1369/180
        let fam = product_lebrun(&rati(1), &rati(6), &rati(1)).unwrap();
        let (lo, hi) = fam.cscs.unwrap();
        let defining = RatPoly::new(vec![rat(-1369, 180), rati(0), rati(1)]);
        assert!(lo.satisfies(&defining));
        assert!(hi.satisfies(&defining));
    }

    #[test]
    fn lebrun_cscs_value_is_constant_scalar_exactly() {
        // check u0(c) c - u1(c) (alpha^2 + beta^2) = 0 at the certified
        // value, by divisibility of the relation polynomial in c (the
        // common denominator of u0 and u1 drops out)
        let alpha = rati(1);
        let beta = rati(6);
        let sum2 = &alpha * &alpha + &beta * &beta;
        let s4 = &sum2 * &sum2 * &sum2 * &sum2;
        // numerators of the printed affine coefficients, as polynomials in c
        let u0 = RatPoly::new(vec![
            rati(6) * (&alpha + &beta) * &s4,
            rati(0),
            rati(-36) * &alpha * &beta * &beta * &sum2 * &sum2,
            rati(0),
            rati(6) * (&alpha - &beta) * &beta * &beta * &beta * &beta,
        ]);
        let u1 = RatPoly::new(vec![
            rati(0),
            rati(-12) * &sum2 * ((rati(2) * &alpha - &beta) * &sum2 * &sum2),
            rati(0),
            rati(-12) * &sum2 * &beta * &beta * &beta,
        ]);
        let t = RatPoly::var();
        let relation = &(&u0 * &t) - &u1.scale(&sum2);
        let defining = RatPoly::new(vec![rat(-1369, 180), rati(0), rati(1)]);
        assert!(defining.divides(&relation));
    }

    #[test]
    fn lebrun_two_ray_line_property() {
        let fam = product_lebrun(&rati(1), &rati(6), &rati(1)).unwrap();
        let (lo, hi) = fam.cscs.unwrap();
        let c_lo = lo.interval(&rat(1, 1 << 30)).midpoint();
        let c_hi = hi.interval(&rat(1, 1 << 30)).midpoint();
        let rays = vec![vec![rati(37), c_lo], vec![rati(37), c_hi]];
        let verdict = crate::polytope::cscs_line_property(&rays).unwrap();
        assert!(verdict.pass);
    }

    #[test]
    fn bridge_matches_surface_twin() {
        for (n, x) in [
            (1u32, rat(1, 2)),
            (1, rat(1, 3)),
            (2, rat(1, 3)),
            (3, rat(1, 5)),
            (2, rat(3, 5)),
        ] {
            let ansatz = hirzebruch_calabi_ansatz(n, &x).unwrap();
            let cert = find_twin(&ToricAnsatz::Calabi(ansatz))
                .unwrap()
                .expect("bridge samples all twin");
            let s = rat(2, n as i64);
            let b = twin_b_of_a(&s, &x, &rati(0)).unwrap();
            // f = (1 - b/x) + (b/x) x_chart up to scale
            let relation = &cert.f.lambda * &b - &cert.f.c1 * (&x - &b);
            assert!(relation.is_zero(), "n={n} x={x}");
            assert!(cert.f.c2.is_zero());
        }
    }

    #[test]
    fn weighted_scal_of_unit_potential_is_scal() {
        let fam = family_example();
        let data = metric_data(&ToricAnsatz::Calabi(fam.ansatz.clone()));
        let one = MomentAffine::new(rati(1), rati(0), rati(0));
        let w = weighted_scal(&data, &one, 4).unwrap();
        assert!(w == data.scal);
    }

    #[test]
    fn moment_laplacian_consistency() {
        // the printed Laplacians of the moment coordinates agree with the
        // divergence route -sum_j d/d(mu_j) H_ji via the chart Jacobian
        let fam = family_example();
        for ansatz in [
            ToricAnsatz::Calabi(fam.ansatz.clone()),
            ToricAnsatz::Product(
                product_fit(
                    &QuadParams::new(rati(-1), rati(1), rati(-2), rati(2)),
                    &QuadLabels::new(rati(1), rati(-1), rati(-1), rati(1)),
                    DegreeCap::Cubic,
                )
                .unwrap(),
            ),
        ] {
            let data = metric_data(&ansatz);
            // chart partials of the moment map give the Jacobian; invert it
            let j = [
                [data.mu[0].partial(0), data.mu[0].partial(1)],
                [data.mu[1].partial(0), data.mu[1].partial(1)],
            ];
            let det = &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0]);
            let det = MRatFn::from_poly(det);
            let inv = [
                [
                    &MRatFn::from_poly(j[1][1].clone()) / &det,
                    &(-&MRatFn::from_poly(j[0][1].clone())) / &det,
                ],
                [
                    &(-&MRatFn::from_poly(j[1][0].clone())) / &det,
                    &MRatFn::from_poly(j[0][0].clone()) / &det,
                ],
            ];
            // d/dmu_i = sum_k inv[k][i] d/dx_k (inverse transpose action)
            let dmu = |g: &RatFn2, i: usize| -> RatFn2 {
                &(&inv[0][i] * &g.partial(0)) + &(&inv[1][i] * &g.partial(1))
            };
            for i in 0..2 {
                let mut div = MRatFn::constant(2, rati(0));
                for jj in 0..2 {
                    div = &div + &dmu(&data.h[jj][i], jj);
                }
                let lap = -&div;
                assert!(lap == data.lap_mu[i], "laplacian route for mu_{i}");
            }
        }
    }
}
