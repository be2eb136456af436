//! Rational functions: univariate [`RatFn`] in normal form and multivariate
//! [`MRatFn`] with best-effort reduction.

use crate::multipoly::MultiPoly;
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Univariate rational function in normal form: the denominator is monic and
/// the gcd of numerator and denominator is one. The denominator is never the
/// zero polynomial.
#[derive(Clone)]
pub struct RatFn<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Scalar> RatFn<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFn { num, den }.normalized()
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return RatFn {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            };
        }
        if self.den.degree() == Some(0) {
            let lead = self.den.coeff(0);
            return RatFn {
                num: self.num.div_scalar(&lead),
                den: Polynomial::one(),
            };
        }
        let g = self.num.gcd(&self.den);
        let (num, den) = if g.degree() == Some(0) {
            (self.num, self.den)
        } else {
            (
                self.num.div_exact(&g).expect("gcd divides"),
                self.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lead = den.leading().expect("nonzero").clone();
        RatFn {
            num: num.div_scalar(&lead),
            den: den.div_scalar(&lead),
        }
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        RatFn {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: T) -> Self {
        RatFn::from_poly(Polynomial::constant(c))
    }

    /// The identity function of the variable.
    pub fn var() -> Self {
        RatFn::from_poly(Polynomial::var())
    }

    pub fn num(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero_fn(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn to_polynomial(&self) -> Option<Polynomial<T>> {
        if self.is_polynomial() {
            Some(self.num.div_scalar(&self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn eval(&self, t: &T) -> Option<T> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFn::new(n, &self.den * &self.den)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        RatFn::new(self.den.clone(), self.num.clone())
    }

    /// Integer power, negative exponents allowed for nonzero functions.
    pub fn powi(&self, e: i32) -> Self {
        if e < 0 {
            return self.recip().powi(-e);
        }
        let mut acc = RatFn::from_poly(Polynomial::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> RatFn<U> {
        RatFn::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }
}

impl<T: Scalar> PartialEq for RatFn<T> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<T: Scalar> Add for &RatFn<T> {
    type Output = RatFn<T>;
    fn add(self, rhs: Self) -> RatFn<T> {
        RatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Sub for &RatFn<T> {
    type Output = RatFn<T>;
    fn sub(self, rhs: Self) -> RatFn<T> {
        RatFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Mul for &RatFn<T> {
    type Output = RatFn<T>;
    fn mul(self, rhs: Self) -> RatFn<T> {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Div for &RatFn<T> {
    type Output = RatFn<T>;
    fn div(self, rhs: Self) -> RatFn<T> {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        RatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<T: Scalar> Neg for &RatFn<T> {
    type Output = RatFn<T>;
    fn neg(self) -> RatFn<T> {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

// Owned-value operator impls so `RatFn<T>` can itself act as a `Scalar`
// (coefficients carrying one symbolic parameter).

impl<T: Scalar> Add for RatFn<T> {
    type Output = RatFn<T>;
    fn add(self, rhs: Self) -> RatFn<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for RatFn<T> {
    type Output = RatFn<T>;
    fn sub(self, rhs: Self) -> RatFn<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for RatFn<T> {
    type Output = RatFn<T>;
    fn mul(self, rhs: Self) -> RatFn<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Div for RatFn<T> {
    type Output = RatFn<T>;
    fn div(self, rhs: Self) -> RatFn<T> {
        &self / &rhs
    }
}

impl<T: Scalar> Neg for RatFn<T> {
    type Output = RatFn<T>;
    fn neg(self) -> RatFn<T> {
        -&self
    }
}

impl<T: Scalar> Zero for RatFn<T> {
    fn zero() -> Self {
        RatFn::from_poly(Polynomial::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Scalar> One for RatFn<T> {
    fn one() -> Self {
        RatFn::from_poly(Polynomial::one())
    }
}

impl<T: Scalar> Scalar for RatFn<T> {
    fn from_i64(v: i64) -> Self {
        RatFn::constant(T::from_i64(v))
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        RatFn::constant(T::from_fraction(num, den))
    }

    fn to_f64_approx(&self) -> f64 {
        f64::NAN
    }
}

impl<T: Scalar> fmt::Debug for RatFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

/// Multivariate rational function. Reduction is best effort (scalar content
/// and exact division), so instances are not unique representatives;
/// equality compares cross products.
#[derive(Clone)]
pub struct MRatFn<T> {
    num: MultiPoly<T>,
    den: MultiPoly<T>,
}

impl<T: Scalar> MRatFn<T> {
    pub fn new(num: MultiPoly<T>, den: MultiPoly<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut out = MRatFn { num, den };
        out.reduce();
        out
    }

    pub fn from_poly(p: MultiPoly<T>) -> Self {
        let n = p.nvars();
        MRatFn {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        MRatFn::from_poly(MultiPoly::constant(nvars, c))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.den.nvars());
            return;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = MultiPoly::one(self.den.nvars());
            return;
        }
        // normalize the denominator's lex-leading coefficient to one
        if let Some((_, c)) = self.den.leading_term() {
            let c = c.clone();
            if c != T::one() {
                let inv = T::one() / c;
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MultiPoly<T> {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly<T> {
        &self.den
    }

    pub fn is_zero_fn(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn to_polynomial(&self) -> Option<MultiPoly<T>> {
        if self.is_polynomial() {
            let c = self.den.constant_value();
            Some(self.num.scale(&(T::one() / c)))
        } else {
            self.num.div_exact(&self.den)
        }
    }

    pub fn eval(&self, point: &[T]) -> Option<T> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn partial(&self, i: usize) -> Self {
        let n = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        MRatFn::new(n, &self.den * &self.den)
    }

    pub fn scale(&self, k: &T) -> Self {
        MRatFn::new(self.num.scale(k), self.den.clone())
    }
}

impl<T: Scalar> PartialEq for MRatFn<T> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<T: Scalar> Add for &MRatFn<T> {
    type Output = MRatFn<T>;
    fn add(self, rhs: Self) -> MRatFn<T> {
        MRatFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Sub for &MRatFn<T> {
    type Output = MRatFn<T>;
    fn sub(self, rhs: Self) -> MRatFn<T> {
        MRatFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Mul for &MRatFn<T> {
    type Output = MRatFn<T>;
    fn mul(self, rhs: Self) -> MRatFn<T> {
        MRatFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Div for &MRatFn<T> {
    type Output = MRatFn<T>;
    fn div(self, rhs: Self) -> MRatFn<T> {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        MRatFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<T: Scalar> Neg for &MRatFn<T> {
    type Output = MRatFn<T>;
    fn neg(self) -> MRatFn<T> {
        MRatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Scalar> fmt::Debug for MRatFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}
