//! Sparse multivariate polynomials over a [`Scalar`].
//!
//! Exponent vectors key a `BTreeMap`, so term order (lex, variable 0 most
//! significant) and iteration are deterministic. Everything in this crate
//! stays at total degree at most eight and at most four variables, so no
//! attempt is made at asymptotic cleverness.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.insert_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, T::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.insert_term(e, T::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            p.insert_term(e, c);
        }
        p
    }

    pub fn insert_term(&mut self, expts: Vec<u32>, coeff: T) {
        assert_eq!(expts.len(), self.nvars, "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(expts) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> T {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    /// Lex-leading term (variable 0 most significant), if any.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &T)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn coeff(&self, expts: &[u32]) -> T {
        self.terms
            .get(expts)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn scale(&self, k: &T) -> Self {
        if k.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let mut p = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            p.insert_term(e.clone(), c.clone() * k.clone());
        }
        p
    }

    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut p = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.insert_term(e2, c.clone() * T::from_i64(e[i] as i64));
        }
        p
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars);
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term * point[i].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitute a polynomial for variable `i`.
    pub fn substitute(&self, i: usize, value: &Self) -> Self {
        assert!(i < self.nvars);
        assert_eq!(value.nvars, self.nvars);
        let mut acc = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let mut term = MultiPoly::from_terms(self.nvars, [(e2, c.clone())]);
            for _ in 0..k {
                term = &term * value;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Coefficients with respect to variable `i`, as polynomials in the
    /// remaining variables (variable `i` zeroed out in the keys).
    pub fn coeffs_in(&self, i: usize) -> BTreeMap<u32, MultiPoly<T>> {
        let mut out: BTreeMap<u32, MultiPoly<T>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[i];
            let mut e2 = e.clone();
            e2[i] = 0;
            out.entry(k)
                .or_insert_with(|| MultiPoly::zero(self.nvars))
                .insert_term(e2, c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn leading(&self) -> Option<(&Vec<u32>, &T)> {
        self.terms.iter().next_back()
    }

    /// Exact multivariate division: `Some(q)` with `self = q * divisor` when
    /// the reduction by the divisor's lex-leading term terminates with zero
    /// remainder, `None` otherwise.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars);
        let (dlead_e, dlead_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((rlead_e, rlead_c)) = rem.leading() {
            let mut qe = Vec::with_capacity(self.nvars);
            for (re, de) in rlead_e.iter().zip(dlead_e.iter()) {
                if re < de {
                    return None;
                }
                qe.push(re - de);
            }
            let qc = rlead_c.clone() / dlead_c.clone();
            let factor = MultiPoly::from_terms(self.nvars, [(qe, qc)]);
            rem = &rem - &(&factor * divisor);
            quot = &quot + &factor;
        }
        Some(quot)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }
}

impl<T: Scalar> Add for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn add(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn sub(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn mul(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                out.insert_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn neg(self) -> MultiPoly<T> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.insert_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w", "v", "u"];
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}", c)?;
            for (i, &k) in e.iter().enumerate() {
                let name = names.get(i).copied().unwrap_or("?");
                match k {
                    0 => {}
                    1 => write!(f, "*{}", name)?,
                    _ => write!(f, "*{}^{}", name, k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rati, Rat, RatMPoly};

    fn x() -> RatMPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> RatMPoly {
        MultiPoly::var(2, 1)
    }

    #[test]
    fn ring_ops() {
        let p = &(&x() + &y()) * &(&x() - &y());
        let q = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(p, q);
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.eval(&[rati(3), rati(2)]), rati(5));
    }

    #[test]
    fn partial_derivative() {
        // d/dx (x^2 y) = 2xy
        let p = &(&x() * &x()) * &y();
        assert_eq!(p.partial(0), (&(&x() * &y()) + &(&x() * &y())));
    }

    #[test]
    fn division_by_linear_factor() {
        // (x - y) divides x^2 - y^2 with quotient x + y
        let p = &(&x() * &x()) - &(&y() * &y());
        let d = &x() - &y();
        assert_eq!(p.div_exact(&d), Some(&x() + &y()));
        // but does not divide x^2 + y^2
        let n = &(&x() * &x()) + &(&y() * &y());
        assert_eq!(n.div_exact(&d), None);
    }

    #[test]
    fn substitution() {
        // x^2 with x := y + 1
        let p = &x() * &x();
        let sub = &y() + &MultiPoly::one(2);
        let got = p.substitute(0, &sub);
        let want = &(&y() * &y()) + &(&(&y() + &y()) + &MultiPoly::one(2));
        assert_eq!(got, want);
    }

    #[test]
    fn coeff_decomposition() {
        // x^2 y + 3 y + 5: coefficients in y
        let p = {
            let mut p = RatMPoly::zero(2);
            p.insert_term(vec![2, 1], rati(1));
            p.insert_term(vec![0, 1], rati(3));
            p.insert_term(vec![0, 0], rati(5));
            p
        };
        let by_y = p.coeffs_in(1);
        assert_eq!(by_y[&0], MultiPoly::constant(2, rati(5)));
        assert_eq!(by_y[&1].coeff(&[2, 0]), rati(1));
        assert_eq!(by_y[&1].coeff(&[0, 0]), rati(3));
    }

    #[test]
    fn lex_leading_is_deterministic() {
        let p = &(&x() * &x()) + &y();
        let lead: Vec<Rat> = p.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(lead.len(), 2);
    }
}
