//! Exact computation and certification of weighted extremal Kahler twins and
//! extremal Sasaki twins on Hirzebruch/ruled surfaces, moment polytopes, and
//! toric quadrilaterals.
//!
//! The numeric substrate (polynomials, rational functions, matrices, closed
//! form integration) is generic over the scalar type through [`Scalar`], so
//! the same kernels run over exact rationals for certification and over `f64`
//! for numerical cross-checks. All certification paths use [`Rat`] and never
//! round: irrational values are carried as [`roots::RootInterval`]s whose
//! defining polynomials are checked exactly.

pub mod scalar;
pub mod poly;
pub mod multipoly;
pub mod ratfn;
pub mod matrix;
pub mod interval;
pub mod roots;
pub mod integrate;
pub mod value;
pub mod render;

pub mod hirzebruch;
pub mod polytope;
pub mod quad;
pub mod acceptance;

pub use scalar::Scalar;

// trait re-export so downstream crates share one num-traits version
pub use num_traits;

/// Arbitrary-precision rational scalar, the exact coefficient type.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Dense univariate polynomial over [`Rat`].
pub type RatPoly = poly::Polynomial<Rat>;
/// Sparse multivariate polynomial over [`Rat`].
pub type RatMPoly = multipoly::MultiPoly<Rat>;
/// Univariate rational function over [`Rat`].
pub type RatFn1 = ratfn::RatFn<Rat>;
/// Multivariate rational function over [`Rat`].
pub type RatFn2 = ratfn::MRatFn<Rat>;
/// Exact matrix over [`Rat`].
pub type RatMatrix = matrix::Matrix<Rat>;

/// Shorthand for building a [`Rat`] from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Shorthand for an integer [`Rat`].
pub fn rati(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Parse a rational written as `p/q`, `p`, or a decimal like `-0.125`.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: Int = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in `{t}`"))?;
        let d: Int = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in `{t}`"))?;
        if d == Int::from(0) {
            return Err(format!("zero denominator in `{t}`"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ipart, fpart)) = t.split_once('.') {
        let neg = ipart.trim_start().starts_with('-');
        let i: Int = if ipart == "-" || ipart.is_empty() {
            Int::from(0)
        } else {
            ipart.parse().map_err(|_| format!("bad number `{t}`"))?
        };
        if !fpart.chars().all(|c| c.is_ascii_digit()) || fpart.is_empty() {
            return Err(format!("bad decimal `{t}`"));
        }
        let frac_num: Int = fpart.parse().unwrap();
        let scale = Int::from(10u32).pow(fpart.len() as u32);
        let frac = Rat::new(frac_num, scale);
        let base = Rat::from_integer(i);
        return Ok(if neg { base - frac } else { base + frac });
    }
    let n: Int = t.parse().map_err(|_| format!("bad number `{t}`"))?;
    Ok(Rat::from_integer(n))
}
