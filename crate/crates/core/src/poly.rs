//! Dense univariate polynomials over a [`Scalar`].

use crate::scalar::Scalar;
use crate::Rat;
use num_integer::Integer;
use num_traits::Signed;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of degree `i`.
/// The zero polynomial has an empty coefficient vector, so the leading
/// coefficient is nonzero whenever one exists.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Polynomial::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_i64(i as i64))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, k: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn div_scalar(&self, k: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() / k.clone()).collect())
    }

    /// Substitute the polynomial `inner` for the variable (Horner).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder of field division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot_coeffs = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().clone() / lead.clone();
            quot_coeffs[rd - dd] = factor.clone();
            let sub = Polynomial::monomial(factor, rd - dd);
            rem = &rem - &(&sub * divisor);
        }
        (Polynomial::new(quot_coeffs), rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (Euclid). `gcd(0, 0) = 0`. Remainders
    /// are re-monicized every step to keep coefficient growth in check.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Scale so the leading coefficient is one (zero polynomial unchanged).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Polynomial::zero(),
            Some(l) => self.div_scalar(&l.clone()),
        }
    }

    /// The squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_exact(&g)
            .expect("gcd divides the polynomial")
            .monic()
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = vec![T::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = c.clone() / T::from_i64((i + 1) as i64);
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{:?}", c)?,
                1 => write!(f, "{:?}*t", c)?,
                _ => write!(f, "{:?}*t^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Polynomial<Rat> {
    /// Rescale to integer, content-one coefficients with a positive leading
    /// coefficient. Canonical form for defining polynomials.
    pub fn integer_normalized(&self) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut den_lcm = num_bigint::BigInt::from(1);
        for c in self.coeffs() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let scaled: Vec<num_bigint::BigInt> = self
            .coeffs()
            .iter()
            .map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut content = num_bigint::BigInt::from(0);
        for v in &scaled {
            content = content.gcd(v);
        }
        if scaled.last().unwrap().is_negative() {
            content = -content;
        }
        Polynomial::new(
            scaled
                .into_iter()
                .map(|v| Rat::from_integer(v / content.clone()))
                .collect(),
        )
    }
}
