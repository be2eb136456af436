//! Admissible weighted extremal machinery on Hirzebruch surfaces and
//! higher-genus ruled surfaces: extremal profiles, twin potentials,
//! Einstein-Maxwell roots, constant-scalar Sasaki roots, and join data.
//!
//! Conventions: the fiber moment coordinate runs over `[-1, 1]`; potentials
//! are kept in the gauge `f = c z + 1` with `c` in `(-1, 1)`; the class
//! parameter is `x` in `(0, 1)`; the base scalar is `s = 2(1 - g)/n`.

use crate::integrate::{
    integrate_poly_over_linear_power_unchecked, integrate_symbolic_upper, IntegrateError,
};
use crate::interval::RatInterval;
use crate::ratfn::RatFn;
use crate::roots::{count_roots_in, isolate_positive_roots, isolate_roots_in, RootInterval};
use crate::scalar::Scalar;
use crate::value::ParamValue;
use crate::{rat, rati, Rat, RatMPoly, RatPoly};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Ruled-surface configuration: genus of the base and twist of the bundle.
/// The base metric has constant scalar curvature `2s` with `s = 2(1-g)/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceClass {
    pub genus: u32,
    pub twist: u32,
}

impl SurfaceClass {
    pub fn hirzebruch(twist: u32) -> Self {
        assert!(twist >= 1, "twist must be positive");
        SurfaceClass { genus: 0, twist }
    }

    pub fn ruled(genus: u32, twist: u32) -> Self {
        assert!(twist >= 1, "twist must be positive");
        SurfaceClass { genus, twist }
    }

    /// `s = 2(1 - g)/n`; always at most two.
    pub fn base_scalar(&self) -> Rat {
        rat(2 * (1 - self.genus as i64), self.twist as i64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HirzebruchError {
    OutOfRange(&'static str),
    /// The profile denominator vanished (never happens for genus zero).
    DegenerateDenominator { value: Rat },
    Integrate(IntegrateError),
    Singular { determinant: Rat },
    /// The integral construction did not reduce to a polynomial.
    NotPolynomial,
    /// A certified-unique root was expected.
    RootCount { expected: usize, got: usize },
}

impl From<IntegrateError> for HirzebruchError {
    fn from(e: IntegrateError) -> Self {
        HirzebruchError::Integrate(e)
    }
}

impl fmt::Display for HirzebruchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HirzebruchError::OutOfRange(what) => write!(f, "parameter out of range: {what}"),
            HirzebruchError::DegenerateDenominator { value } => {
                write!(f, "profile denominator vanished ({value})")
            }
            HirzebruchError::Integrate(e) => write!(f, "{e}"),
            HirzebruchError::Singular { determinant } => {
                write!(f, "singular moment system (determinant {determinant})")
            }
            HirzebruchError::NotPolynomial => {
                write!(f, "integral construction is not polynomial")
            }
            HirzebruchError::RootCount { expected, got } => {
                write!(f, "expected {expected} certified roots, found {got}")
            }
        }
    }
}

impl std::error::Error for HirzebruchError {}

type Result<T> = std::result::Result<T, HirzebruchError>;

// ---------------------------------------------------------------------------
// moment integrals and the extremal affine coefficients

const ALPHA_PAIRS: [(u8, u8); 5] = [(0, 5), (1, 5), (2, 5), (0, 4), (1, 4)];
const BETA_PAIRS: [(u8, u8); 2] = [(0, 3), (1, 3)];

/// The fiber-moment integrals `alpha_(r,-k)` and `beta_(r,-k)` entering the
/// extremal linear system and the constant-scalar condition.
#[derive(Clone, Debug)]
pub struct MomentIntegrals<T> {
    alpha: BTreeMap<(u8, u8), T>,
    beta: BTreeMap<(u8, u8), T>,
}

impl<T: Scalar> MomentIntegrals<T> {
    pub fn alpha(&self, r: u8, k: u8) -> &T {
        &self.alpha[&(r, k)]
    }

    pub fn beta(&self, r: u8, k: u8) -> &T {
        &self.beta[&(r, k)]
    }
}

fn pow_t<T: Scalar>(base: &T, k: u32) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc * base.clone();
    }
    acc
}

/// Compute all required moment integrals over any scalar field. The caller
/// is responsible for the pole condition `|c| < 1`; the rational entry point
/// [`moment_integrals`] checks it.
pub fn moment_integrals_in<T: Scalar>(s: &T, x: &T, c: &T) -> Result<MomentIntegrals<T>> {
    let one = T::one();
    let m_one = -T::one();
    let mut alpha = BTreeMap::new();
    for (r, k) in ALPHA_PAIRS {
        // t^r (1 + x t)
        let mut coeffs = vec![T::zero(); r as usize + 2];
        coeffs[r as usize] = one.clone();
        coeffs[r as usize + 1] = x.clone();
        let p = crate::poly::Polynomial::new(coeffs);
        let v = integrate_poly_over_linear_power_unchecked(&p, c, k as u32, &m_one, &one)?;
        alpha.insert((r, k), v);
    }
    let mut beta = BTreeMap::new();
    for (r, k) in BETA_PAIRS {
        let mut coeffs = vec![T::zero(); r as usize + 1];
        coeffs[r as usize] = one.clone();
        let p = crate::poly::Polynomial::new(coeffs);
        let integral = integrate_poly_over_linear_power_unchecked(&p, c, k as u32, &m_one, &one)?;
        let sign = if r % 2 == 0 { one.clone() } else { m_one.clone() };
        let boundary = sign * (one.clone() - x.clone()) / pow_t(&(one.clone() - c.clone()), k as u32)
            + (one.clone() + x.clone()) / pow_t(&(one.clone() + c.clone()), k as u32);
        let v = x.clone() * s.clone() * integral + boundary;
        beta.insert((r, k), v);
    }
    Ok(MomentIntegrals { alpha, beta })
}

/// Rational entry point with the pole condition checked.
pub fn moment_integrals(s: &Rat, x: &Rat, c: &Rat) -> Result<MomentIntegrals<Rat>> {
    if c.abs() >= rati(1) {
        return Err(HirzebruchError::OutOfRange("|c| < 1 required"));
    }
    moment_integrals_in(s, x, c)
}

/// Solve the 2x2 linear system for the extremal affine coefficients
/// `(A1, A2)`; `A1 = 0` exactly at the Einstein-Maxwell parameters.
pub fn extremal_affine_coeffs_in<T: Scalar>(mi: &MomentIntegrals<T>) -> Result<(T, T)> {
    let a15 = mi.alpha(1, 5).clone();
    let a05 = mi.alpha(0, 5).clone();
    let a25 = mi.alpha(2, 5).clone();
    let b03 = mi.beta(0, 3).clone();
    let b13 = mi.beta(1, 3).clone();
    let det = a15.clone() * a15.clone() - a05.clone() * a25.clone();
    if det.is_zero() {
        return Err(HirzebruchError::Singular {
            determinant: rati(0),
        });
    }
    let two = T::from_i64(2);
    let a1 = (two.clone() * b03.clone() * a15.clone() - a05 * two.clone() * b13.clone())
        / det.clone();
    let a2 = (a15 * two.clone() * b13 - two * b03 * a25) / det;
    Ok((a1, a2))
}

pub fn extremal_affine_coeffs(s: &Rat, x: &Rat, c: &Rat) -> Result<(Rat, Rat)> {
    let mi = moment_integrals(s, x, c)?;
    extremal_affine_coeffs_in(&mi)
}

/// `(A1(c), A2(c))` as exact rational functions of a symbolic potential
/// parameter `c`, for fixed rational `s` and `x`.
pub fn extremal_affine_coeffs_symbolic(s: &Rat, x: &Rat) -> Result<(RatFn<Rat>, RatFn<Rat>)> {
    let sk = RatFn::constant(s.clone());
    let xk = RatFn::constant(x.clone());
    let ck = RatFn::<Rat>::var();
    let mi = moment_integrals_in(&sk, &xk, &ck)?;
    extremal_affine_coeffs_in(&mi)
}

/// Exact decision of `A1 = 0` through the moment-integral pipeline, for a
/// rational or algebraic potential parameter.
pub fn a1_vanishes(s: &Rat, x: &Rat, c: &ParamValue) -> Result<bool> {
    match c {
        ParamValue::Exact(cv) => {
            let (a1, _) = extremal_affine_coeffs(s, x, cv)?;
            Ok(a1.is_zero())
        }
        ParamValue::Algebraic(root) => {
            let (a1, _) = extremal_affine_coeffs_symbolic(s, x)?;
            if root.satisfies(a1.den()) {
                return Err(HirzebruchError::DegenerateDenominator {
                    value: root.midpoint(),
                });
            }
            Ok(root.satisfies(a1.num()))
        }
    }
}

// ---------------------------------------------------------------------------
// the extremal profile

/// Profile data of the admissible `(c z + 1, 4)`-extremal metric: the
/// quadratic factor `P`, the quartic `F = (1 - z^2) P`, the extremal affine
/// coefficients, and the positivity/boundary verdicts.
#[derive(Clone, Debug)]
pub struct ExtremalProfile {
    pub p: RatPoly,
    pub f: RatPoly,
    pub a1: Rat,
    pub a2: Rat,
    pub positive: bool,
    pub boundary_ok: bool,
}

/// The common denominator `3c^2x^2 - c^2 - 4cx - x^2 + 3` of the profile
/// coefficients; positive whenever `|x| < 1` and `|c| < 1`.
pub fn profile_denominator(x: &Rat, c: &Rat) -> Rat {
    rati(3) * c * c * x * x - c * c - rati(4) * c * x - x * x + rati(3)
}

/// Closed-form quadratic `P` of the profile.
pub fn profile_quadratic(s: &Rat, x: &Rat, c: &Rat) -> Result<RatPoly> {
    let den = profile_denominator(x, c);
    if den.is_zero() {
        return Err(HirzebruchError::DegenerateDenominator { value: den });
    }
    let two_den = rati(2) * &den;
    let p0 = (c * c * s * x + rati(3) * c * c * x * x - c * c - rati(2) * c * s * x * x
        + rati(3) * c * x * x * x
        - rati(7) * c * x
        + s * x * x * x
        - rati(4) * x * x
        + rati(6))
        / &two_den;
    let p2 = ((c - x) * (-(c * s * x) + rati(3) * c * x * x - c + s * x * x - rati(2) * x))
        / &two_den;
    Ok(RatPoly::new(vec![p0, x.clone(), p2]))
}

/// Build the profile from the closed form, verifying boundary conditions
/// exactly and positivity by root isolation.
pub fn profile(s: &Rat, x: &Rat, c: &Rat) -> Result<ExtremalProfile> {
    if !(x > &rati(0) && x < &rati(1)) {
        return Err(HirzebruchError::OutOfRange("x in (0,1) required"));
    }
    if c.abs() >= rati(1) {
        return Err(HirzebruchError::OutOfRange("|c| < 1 required"));
    }
    let p = profile_quadratic(s, x, c)?;
    let one_minus_z2 = RatPoly::from_i64(&[1, 0, -1]);
    let f = &one_minus_z2 * &p;
    let (a1, a2) = extremal_affine_coeffs(s, x, c)?;
    let fd = f.derivative();
    let boundary_ok = f.eval(&rati(1)).is_zero()
        && f.eval(&rati(-1)).is_zero()
        && fd.eval(&rati(1)) == rati(-2) * (rati(1) + x)
        && fd.eval(&rati(-1)) == rati(2) * (rati(1) - x);
    let positive = p.eval(&rati(0)).is_positive()
        && count_roots_in(&p, &rati(-1), &rati(1)) == 0;
    Ok(ExtremalProfile {
        p,
        f,
        a1,
        a2,
        positive,
        boundary_ok,
    })
}

/// The quartic profile rebuilt through the integral construction: solve for
/// `(A1, A2)`, integrate the curvature integrand symbolically, and reduce.
/// Independent route to the same polynomial as `profile`.
pub fn profile_from_integral_construction(s: &Rat, x: &Rat, c: &Rat) -> Result<RatPoly> {
    if c.abs() >= rati(1) {
        return Err(HirzebruchError::OutOfRange("|c| < 1 required"));
    }
    let (a1, a2) = extremal_affine_coeffs(s, x, c)?;
    // Q(t) = 2xs (ct+1)^-3 - (A1 t + A2)(1 + x t)(ct+1)^-5
    let q3_num = RatPoly::constant(rati(2) * x * s);
    let q5_num = &RatPoly::new(vec![a2.clone(), a1.clone()]) * &RatPoly::new(vec![rati(1), x.clone()]);
    let m_one = rati(-1);
    let t = RatPoly::var();
    // I0(z) = int_{-1}^z Q dt,  I1(z) = int_{-1}^z t Q dt
    let i0 = &integrate_symbolic_upper(&q3_num, c, 3, &m_one)?
        - &integrate_symbolic_upper(&q5_num, c, 5, &m_one)?;
    let i1 = &integrate_symbolic_upper(&(&t * &q3_num), c, 3, &m_one)?
        - &integrate_symbolic_upper(&(&t * &q5_num), c, 5, &m_one)?;
    // F(z) = (cz+1)^3 [ 2(1-x)/(1-c)^3 (z+1) + z I0 - I1 ]
    let lead = RatFn::from_poly(RatPoly::new(vec![rati(1), c.clone()]).pow(3));
    let boundary_term = RatFn::from_poly(RatPoly::new(vec![rati(1), rati(1)]).scale(
        &(rati(2) * (rati(1) - x) / ((rati(1) - c) * (rati(1) - c) * (rati(1) - c))),
    ));
    let z = RatFn::from_poly(RatPoly::var());
    let bracket = &(&boundary_term + &(&z * &i0)) - &i1;
    let f = &lead * &bracket;
    f.to_polynomial().ok_or(HirzebruchError::NotPolynomial)
}

/// Kähler class coordinates `(m1, m2) = (2, (1-x) n / x)` in the fixed
/// normalization.
pub fn kahler_class(twist: u32, x: &Rat) -> (Rat, Rat) {
    (rati(2), (rati(1) - x) * rati(twist as i64) / x)
}

// ---------------------------------------------------------------------------
// the twin equation

/// Coefficients `(B, D, F)` of the twin equation
/// `F + D(a + b) + B a b = 0`.
pub fn twin_coeffs(s: &Rat, x: &Rat) -> (Rat, Rat, Rat) {
    let b = x * &(rati(3) * x * x - rati(2) * s * x - rati(1));
    let d = rati(1) + s * x - rati(3) * x * x + s * x * x * x;
    let f = x * &(rati(1) - rati(2) * s * x + x * x);
    (b, d, f)
}

/// Exact residual of the twin equation at `(a, b)`.
pub fn twin_residual(s: &Rat, x: &Rat, a: &Rat, b: &Rat) -> Rat {
    let (cb, cd, cf) = twin_coeffs(s, x);
    cf + &cd * &(a + b) + cb * a * b
}

/// A potential pair `(a, b)` solving the twin equation, with range and
/// bifurcation verdicts and a residual certificate.
#[derive(Clone, Debug)]
pub struct TwinPair {
    pub a: ParamValue,
    pub b: ParamValue,
    pub bifurcation: bool,
    pub in_range: bool,
    pub residual: ResidualCertificate,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResidualCertificate {
    ExactZero,
    /// The residual interval contains zero with the given width bound.
    Certified { width: Rat },
}

/// Solve the twin equation for the partner of a rational `a`. `None` when
/// the denominator vanishes or the partner leaves `(-1, 1)`.
pub fn twin_b_of_a(s: &Rat, x: &Rat, a: &Rat) -> Option<Rat> {
    let (cb, cd, cf) = twin_coeffs(s, x);
    let den = &cd + &(&cb * a);
    if den.is_zero() {
        return None;
    }
    Some(-(cf + cd * a) / den)
}

/// Twin of a rational or algebraic potential parameter `a` in the class
/// `x`. Emitted pairs satisfy the twin equation exactly (rational) or with
/// a certified interval residual (algebraic).
pub fn twin_of(s: &Rat, x: &Rat, a: &ParamValue) -> Option<TwinPair> {
    match a {
        ParamValue::Exact(av) => {
            let b = twin_b_of_a(s, x, av)?;
            if b.abs() >= rati(1) {
                return None;
            }
            debug_assert!(twin_residual(s, x, av, &b).is_zero());
            Some(TwinPair {
                a: a.clone(),
                b: ParamValue::Exact(b.clone()),
                bifurcation: b == *av,
                in_range: true,
                residual: ResidualCertificate::ExactZero,
            })
        }
        ParamValue::Algebraic(root) => twin_of_algebraic(s, x, root),
    }
}

fn twin_of_algebraic(s: &Rat, x: &Rat, a: &RootInterval) -> Option<TwinPair> {
    let (cb, cd, cf) = twin_coeffs(s, x);
    // bifurcation iff a is a root of B t^2 + 2D t + F, checked exactly
    let bif_poly = RatPoly::new(vec![cf.clone(), rati(2) * &cd, cb.clone()]);
    if a.satisfies(&bif_poly) {
        return Some(TwinPair {
            a: ParamValue::Algebraic(a.clone()),
            b: ParamValue::Algebraic(a.clone()),
            bifurcation: true,
            in_range: true,
            residual: ResidualCertificate::ExactZero,
        });
    }
    // denominator D + B a must not vanish
    let den_poly = RatPoly::new(vec![cd.clone(), cb.clone()]);
    if a.satisfies(&den_poly) {
        return None;
    }
    // b = -(F + D a)/(D + B a); push the defining polynomial of a through
    // the inverse of the same transform (the twin relation is symmetric)
    let m = a.isolating_poly();
    let num_map = RatPoly::new(vec![-cf.clone(), -cd.clone()]); // -(F + D t)
    let den_map = den_poly.clone(); // D + B t
    let deg = m.degree().unwrap_or(0);
    let mut b_def = RatPoly::zero();
    for (i, mi) in m.coeffs().iter().enumerate() {
        let term = &num_map.pow(i as u32) * &den_map.pow((deg - i) as u32);
        b_def = &b_def + &term.scale(mi);
    }
    if b_def.is_zero() {
        return None;
    }
    // enclose b by interval arithmetic on a refined enclosure of a
    let mut tol = rat(1, 1 << 20);
    let b_iv = loop {
        let ai = a.refined(&tol).interval();
        let num_iv = ai.eval_poly(&num_map);
        let den_iv = ai.eval_poly(&den_map);
        if let Some(biv) = num_iv.div(&den_iv) {
            // need the enclosure to isolate exactly one root of b_def
            if crate::roots::count_roots_in_closed(&b_def.squarefree_part(), &biv.lo, &biv.hi) == 1
            {
                break biv;
            }
        }
        tol /= rati(1 << 10);
    };
    let roots = isolate_roots_in(
        &b_def,
        &(&b_iv.lo - &rati(1)),
        &(&b_iv.hi + &rati(1)),
    )
    .ok()?;
    let b_root = roots
        .into_iter()
        .find(|r| r.lo() <= &b_iv.hi && &b_iv.lo <= r.hi())?;
    let b = ParamValue::Algebraic(b_root);
    // strict range check; b = +-1 exactly would show up as satisfying the
    // corresponding linear relation pushed through the transform
    if !b.in_open(&rati(-1), &rati(1)) {
        return None;
    }
    // certify the residual numerically to the standard width
    let bound = rat(1, 1_000_000_000_000);
    let width = certify_twin_residual(s, x, &ParamValue::Algebraic(a.clone()), &b, &bound)?;
    Some(TwinPair {
        a: ParamValue::Algebraic(a.clone()),
        b,
        bifurcation: false,
        in_range: true,
        residual: ResidualCertificate::Certified { width },
    })
}

/// Refine both values until the twin-equation residual interval contains
/// zero with width below `bound`; returns the achieved width.
pub fn certify_twin_residual(
    s: &Rat,
    x: &Rat,
    a: &ParamValue,
    b: &ParamValue,
    bound: &Rat,
) -> Option<Rat> {
    let (cb, cd, cf) = twin_coeffs(s, x);
    let mut tol = bound.clone();
    for _ in 0..8 {
        let ai = a.interval(&tol);
        let bi = b.interval(&tol);
        let sum = ai.add(&bi);
        let prod = ai.mul(&bi);
        let res = RatInterval::point(cf.clone())
            .add(&sum.scale(&cd))
            .add(&prod.scale(&cb));
        if res.contains_zero() && res.width() <= *bound {
            return Some(res.width());
        }
        tol /= rati(1 << 10);
    }
    None
}

// ---------------------------------------------------------------------------
// the twin conic

/// Conic data of the twin equation in the `(a, b)` plane, in the labeling
/// `A a^2 + B ab + C b^2 + D a + E b + F = 0` with `A = C = 0`, `E = D`.
#[derive(Clone, Debug)]
pub struct TwinConic {
    pub b: Rat,
    pub d: Rat,
    pub f: Rat,
    pub determinant: Rat,
    pub nondegenerate: bool,
}

/// Direct 3x3 determinant of the conic matrix.
fn conic_det_direct(b: &Rat, d: &Rat, f: &Rat) -> Rat {
    // det [[0, B/2, D/2], [B/2, 0, D/2], [D/2, D/2, F]]
    let b2 = b / &rati(2);
    let d2 = d / &rati(2);
    -(&b2 * &(&b2 * f - &d2 * &d2)) + &d2 * &(&b2 * &d2)
}

pub fn twin_conic(s: &Rat, x: &Rat) -> TwinConic {
    let (b, d, f) = twin_coeffs(s, x);
    let determinant = &b * &(&d * &d - &b * &f) / rati(4);
    debug_assert_eq!(determinant, conic_det_direct(&b, &d, &f));
    let nondegenerate = !determinant.is_zero();
    TwinConic {
        b,
        d,
        f,
        determinant,
        nondegenerate,
    }
}

/// The determinant as a polynomial in `x` for fixed `s`.
pub fn conic_determinant_poly(s: &Rat) -> RatPoly {
    // B(D^2 - B F)/4 with B, D, F polynomials in x
    let b = RatPoly::new(vec![rati(0), -rati(1), rati(-2) * s, rati(3)]);
    let d = RatPoly::new(vec![rati(1), s.clone(), rati(-3), s.clone()]);
    let f = RatPoly::new(vec![rati(0), rati(1), rati(-2) * s, rati(1)]);
    (&b * &(&(&d * &d) - &(&b * &f))).div_scalar(&rati(4))
}

/// Closed-form factorization of the determinant.
pub fn conic_determinant_closed_form(s: &Rat, x: &Rat) -> Rat {
    x * &(rati(3) * x * x - rati(2) * s * x - rati(1))
        * (rati(1) - x * x).pow(2)
        * (rati(1) + rati(2) * s * x + (s * s - rati(3)) * x * x)
        / rati(4)
}

/// Symbolic identity check in indeterminates `(s, x)`: the direct 3x3
/// determinant, the `B(D^2 - BF)/4` route, and the printed factorization
/// all agree as polynomials.
pub fn conic_det_symbolic_identity() -> bool {
    let s = RatMPoly::var(2, 0);
    let x = RatMPoly::var(2, 1);
    let one = RatMPoly::one(2);
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let sx = &s * &x;
    // B = x (3x^2 - 2sx - 1), D = 1 + sx - 3x^2 + sx^3, F = x (1 - 2sx + x^2)
    let fac_b = &(&x2.scale(&rati(3)) - &sx.scale(&rati(2))) - &one;
    let b = &x * &fac_b;
    let d = &(&(&one + &sx) - &x2.scale(&rati(3))) + &(&s * &x3);
    let f = &x * &(&(&one - &sx.scale(&rati(2))) + &x2);
    let det_formula = (&b * &(&(&d * &d) - &(&b * &f))).scale(&rat(1, 4));
    // direct 3x3 determinant of [[0,B/2,D/2],[B/2,0,D/2],[D/2,D/2,F]]
    let b2 = b.scale(&rat(1, 2));
    let d2 = d.scale(&rat(1, 2));
    let det_direct = &(-&(&b2 * &(&(&b2 * &f) - &(&d2 * &d2)))) + &(&d2 * &(&b2 * &d2));
    // x (3x^2 - 2sx - 1) (1 - x^2)^2 (1 + 2sx + (s^2 - 3) x^2) / 4
    let one_minus_x2 = &one - &x2;
    let fac_last = &(&one + &sx.scale(&rati(2))) + &(&(&(&s * &s) - &RatMPoly::constant(2, rati(3))) * &x2);
    let factored = (&(&(&x * &fac_b) * &(&one_minus_x2 * &one_minus_x2)) * &fac_last)
        .scale(&rat(1, 4));
    det_formula == det_direct && det_formula == factored
}

/// Class parameters in `(0, 1)` where the conic degenerates, as certified
/// values; empty for `s` close to two where the conic never degenerates.
pub fn degenerate_class_params(s: &Rat) -> Vec<ParamValue> {
    // det = 0 at roots of 3x^2 - 2sx - 1 and (s^2 - 3)x^2 + 2sx + 1
    let q1 = RatPoly::new(vec![rati(-1), rati(-2) * s, rati(3)]);
    let q2 = RatPoly::new(vec![rati(1), rati(2) * s, s * s - rati(3)]);
    let mut out = Vec::new();
    for q in [q1, q2] {
        out.extend(crate::value::isolate_params_in(&q, &rati(0), &rati(1)));
    }
    out
}

// ---------------------------------------------------------------------------
// Einstein-Maxwell and constant-scalar-Sasaki roots

/// The quadratic factors of the Einstein-Maxwell condition, ascending
/// coefficients: `x - 2c + x c^2` and `(2 - sx) - 2x c + sx c^2`.
pub fn em_factors(s: &Rat, x: &Rat) -> (RatPoly, RatPoly) {
    let f1 = RatPoly::new(vec![x.clone(), rati(-2), x.clone()]);
    let f2 = RatPoly::new(vec![rati(2) - s * x, rati(-2) * x, s * x]);
    (f1, f2)
}

/// Einstein-Maxwell condition evaluated at a rational `c`.
pub fn em_condition(s: &Rat, x: &Rat, c: &Rat) -> Rat {
    let (f1, f2) = em_factors(s, x);
    f1.eval(c) * f2.eval(c)
}

/// All Einstein-Maxwell potential parameters in `(-1, 1)`, certified.
pub fn em_roots(s: &Rat, x: &Rat) -> Vec<ParamValue> {
    let (f1, f2) = em_factors(s, x);
    let mut out = Vec::new();
    for f in [f1, f2] {
        if f.is_zero() {
            continue;
        }
        out.extend(crate::value::isolate_params_in(&f, &rati(-1), &rati(1)));
    }
    // deterministic order, deduplicating coincident roots from both factors
    out.sort_by(|p, q| {
        p.interval(&rat(1, 1 << 30))
            .midpoint()
            .cmp(&q.interval(&rat(1, 1 << 30)).midpoint())
    });
    out.dedup_by(|p, q| p.certainly_equal(q));
    out
}

/// Exact twin-equation residual of the conjugate Einstein-Maxwell pair
/// `(a21, a22)` through its symmetric functions (defined for `x` where the
/// second factor has roots).
pub fn em_pair_twin_residual(s: &Rat, x: &Rat) -> Rat {
    let (cb, cd, cf) = twin_coeffs(s, x);
    // a21 + a22 = 2/s, a21 a22 = (2 - sx)/(sx)
    let sum = rati(2) / s;
    let prod = (rati(2) - s * x) / (s * x);
    cf + cd * sum + cb * prod
}

/// Ascending coefficients of the constant-scalar-Sasaki cubic in `c`.
pub fn cscs_cubic(s: &Rat, x: &Rat) -> RatPoly {
    RatPoly::new(vec![
        (s * x - rati(2)) * x,
        rati(5) - s * x + x * x,
        -(x * &(rati(6) + s * x)),
        rati(3) * x * x + s * x - rati(1),
    ])
}

/// The substituted polynomial `q(ĉ)` with `c = (1 - ĉ)/(1 + ĉ)`; it has
/// exactly one positive root for `s <= 2`.
pub fn cscs_qhat(s: &Rat, x: &Rat) -> RatPoly {
    let one_px = rati(1) + x;
    let one_mx = rati(1) - x;
    RatPoly::new(vec![
        &one_mx * &one_mx,
        &one_mx * &(rati(2) + rati(2) * x - s * x),
        -(&one_px * &(rati(2) * &one_mx - s * x)),
        -(&one_px * &one_px),
    ])
}

/// The unique constant-scalar-Sasaki potential parameter in `(-1, 1)`,
/// certified through the positive-root count of `q(ĉ)`.
pub fn cscs_root(s: &Rat, x: &Rat) -> Result<ParamValue> {
    if !(x > &rati(0) && x < &rati(1)) {
        return Err(HirzebruchError::OutOfRange("x in (0,1) required"));
    }
    if s > &rati(2) {
        return Err(HirzebruchError::OutOfRange("s <= 2 required"));
    }
    let qhat = cscs_qhat(s, x);
    let positive = isolate_positive_roots(&qhat).map_err(|_| HirzebruchError::RootCount {
        expected: 1,
        got: 0,
    })?;
    if positive.len() != 1 {
        return Err(HirzebruchError::RootCount {
            expected: 1,
            got: positive.len(),
        });
    }
    let cubic = cscs_cubic(s, x);
    let params = crate::value::isolate_params_in(&cubic, &rati(-1), &rati(1));
    if params.len() != 1 {
        return Err(HirzebruchError::RootCount {
            expected: 1,
            got: params.len(),
        });
    }
    Ok(params.into_iter().next().unwrap())
}

/// Compose `cscs_root` with `twin_of`; `None` at a bifurcation (the
/// constant-scalar ray is its own twin).
pub fn cscs_twin(s: &Rat, x: &Rat) -> Result<Option<TwinPair>> {
    let a = cscs_root(s, x)?;
    Ok(twin_of(s, x, &a).filter(|pair| !pair.bifurcation))
}

// ---------------------------------------------------------------------------
// higher genus and joins

/// Twin of the always-positive profile choice `a = x`, for any base scalar.
#[derive(Clone, Debug)]
pub struct GenusTwin {
    pub a: Rat,
    pub b: Rat,
    pub in_range: bool,
    pub bifurcation: bool,
    pub positive_a: bool,
    /// Positivity verdict for the partner profile; `None` out of range.
    pub positive_b: Option<bool>,
}

pub fn genus_twin(s: &Rat, x: &Rat) -> Result<GenusTwin> {
    if !(x > &rati(0) && x < &rati(1)) {
        return Err(HirzebruchError::OutOfRange("x in (0,1) required"));
    }
    let den = rati(3) * x * x - s * x - rati(1);
    if den.is_zero() {
        return Err(HirzebruchError::DegenerateDenominator { value: den });
    }
    let b = x * &(rati(2) - s * x) / den;
    debug_assert!(twin_residual(s, x, x, &b).is_zero());
    let in_range = b.abs() < rati(1);
    let positive_b = if in_range {
        profile(s, x, &b).ok().map(|pr| pr.positive)
    } else {
        None
    };
    // P_{x,x} = 1 + x z is positive outright; confirmed through the profile
    let positive_a = profile(s, x, x).map(|pr| pr.positive).unwrap_or(false);
    Ok(GenusTwin {
        a: x.clone(),
        b: b.clone(),
        in_range,
        bifurcation: b == *x,
        positive_a,
        positive_b,
    })
}

/// Join parameters of the smooth quotient presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct JoinData {
    pub w1: u64,
    pub w2: u64,
    pub l1: u64,
    pub l2: u64,
    pub twist: u64,
    pub x: Rat,
    pub twisted: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum JoinError {
    NotCoprime,
    NotOrdered,
    NonPositive,
}

impl fmt::Display for JoinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JoinError::NotCoprime => write!(f, "weights must be coprime"),
            JoinError::NotOrdered => write!(f, "weights must satisfy w1 > w2 >= 1"),
            JoinError::NonPositive => write!(f, "all join parameters must be positive"),
        }
    }
}

impl std::error::Error for JoinError {}

pub fn join_params(w1: u64, w2: u64, l1: u64) -> std::result::Result<JoinData, JoinError> {
    if w1 == 0 || w2 == 0 || l1 == 0 {
        return Err(JoinError::NonPositive);
    }
    if w1 <= w2 {
        return Err(JoinError::NotOrdered);
    }
    if num_integer::gcd(w1, w2) != 1 {
        return Err(JoinError::NotCoprime);
    }
    let twist = l1 * (w1 - w2);
    let x = rat((w1 - w2) as i64, (w1 + w2) as i64);
    Ok(JoinData {
        w1,
        w2,
        l1,
        l2: 1,
        twist,
        x,
        twisted: twist % 2 == 1,
    })
}

// ---------------------------------------------------------------------------
// identities used by the verification suite

/// Defining quartic of the class containing the conformally Einstein
/// extremal metric, ascending coefficients.
pub fn page_quartic() -> RatPoly {
    RatPoly::from_i64(&[-3, 0, 18, -16, 5])
}

/// With `s = 2` and the extremal twin `b(x)` substituted for the potential
/// parameter, the Einstein-Maxwell condition reduces to the quartic above:
/// its first factor's numerator is divisible by the quartic.
pub fn page_reduction_holds() -> bool {
    let x = RatFn::<Rat>::var();
    let one = RatFn::constant(rati(1));
    let k = |v: i64| RatFn::constant(rati(v));
    // b(x) = -x(1 - 4x + x^2) / (1 + 2x - 3x^2 + 2x^3)
    let num = &x * &(&(&one - &(&k(4) * &x)) + &(&x * &x));
    let den = &(&(&one + &(&k(2) * &x)) - &(&k(3) * &(&x * &x))) + &(&k(2) * &(&x * &(&x * &x)));
    let b = &(-&num) / &den;
    // first Einstein-Maxwell factor at c = b: x b^2 - 2 b + x
    let em1 = &(&(&x * &(&b * &b)) - &(&k(2) * &b)) + &x;
    page_quartic().divides(em1.num())
}

/// Footnote identity for the twin of the all-`x` Einstein-Maxwell branch:
/// substituting the class parameter `x = 2a/(1 + a^2)` into the twin
/// formula yields the stated rational function of `a`.
pub fn em_branch_twin_identity_holds() -> bool {
    let a = RatFn::<Rat>::var();
    let one = RatFn::constant(rati(1));
    let k = |v: i64| RatFn::constant(rati(v));
    let x = &(&k(2) * &a) / &(&one + &(&a * &a));
    let s = k(2);
    // twin coefficients as functions of a
    let cb = &x * &(&(&(&k(3) * &(&x * &x)) - &(&(&k(2) * &s) * &x)) - &one);
    let cd = &(&(&one + &(&s * &x)) - &(&k(3) * &(&x * &x))) + &(&s * &(&x * &(&x * &x)));
    let cf = &x * &(&(&one - &(&(&k(2) * &s) * &x)) + &(&x * &x));
    let b1 = &(-&(&cf + &(&cd * &a))) / &(&cd + &(&cb * &a));
    // printed form
    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let a4 = &a2 * &a2;
    let num = &a
        * &(&(&(&(&a4 + &(&k(4) * &a3)) - &(&k(6) * &a2)) + &(&k(12) * &a)) - &k(3));
    let den = &(&(&(&a4 + &(&k(12) * &a3)) - &(&k(10) * &a2)) + &(&k(4) * &a)) + &one;
    b1 == &num / &den
}

/// Certify one genuine twin pair on the open segment from `p0` to `p1` in
/// the `(a, b)` square: isolate a root of the twin equation restricted to
/// the segment and return enclosures for the pair.
pub fn certify_twin_on_segment(
    s: &Rat,
    x: &Rat,
    p0: (Rat, Rat),
    p1: (Rat, Rat),
) -> Option<(RatInterval, RatInterval)> {
    let (cb, cd, cf) = twin_coeffs(s, x);
    // a(t) and b(t) affine in the segment parameter
    let a_t = RatPoly::new(vec![p0.0.clone(), &p1.0 - &p0.0]);
    let b_t = RatPoly::new(vec![p0.1.clone(), &p1.1 - &p0.1]);
    let g = &(&RatPoly::constant(cf) + (&(&a_t + &b_t).scale(&cd)))
        + &(&a_t * &b_t).scale(&cb);
    let roots = isolate_roots_in(&g, &rati(0), &rati(1)).ok()?;
    let t = roots.first()?.refined(&rat(1, 1 << 24));
    let ti = t.interval();
    Some((ti.eval_poly(&a_t), ti.eval_poly(&b_t)))
}
