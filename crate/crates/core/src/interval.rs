//! Closed intervals with exact rational endpoints. Endpoint arithmetic is
//! exact, so interval evaluation gives certified enclosures with no rounding
//! model at all.

use crate::{Rat, RatPoly};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        RatInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / crate::rati(2)
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Largest absolute value attained on the interval.
    pub fn abs_bound(&self) -> Rat {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Self {
        RatInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }

    /// Division; the divisor interval must not contain zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let recip = RatInterval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&recip))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k >= &Rat::zero() {
            RatInterval::new(&self.lo * k, &self.hi * k)
        } else {
            RatInterval::new(&self.hi * k, &self.lo * k)
        }
    }

    pub fn shift(&self, k: &Rat) -> Self {
        RatInterval::new(&self.lo + k, &self.hi + k)
    }

    /// Enclosure of `p` over the interval (Horner with interval steps).
    pub fn eval_poly(&self, p: &RatPoly) -> RatInterval {
        let mut acc = RatInterval::point(Rat::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).shift(c);
        }
        acc
    }

    /// True when the two intervals are certainly within `tol` of each other.
    pub fn within(&self, other: &Self, tol: &Rat) -> bool {
        let gap = if self.hi < other.lo {
            &other.lo - &self.hi
        } else if other.hi < self.lo {
            &self.lo - &other.hi
        } else {
            Rat::zero()
        };
        let spread = gap + self.width() + other.width();
        &spread <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rati, RatPoly};

    #[test]
    fn arithmetic() {
        let a = RatInterval::new(rati(1), rati(2));
        let b = RatInterval::new(rati(-1), rati(3));
        assert_eq!(a.add(&b), RatInterval::new(rati(0), rati(5)));
        assert_eq!(a.mul(&b), RatInterval::new(rati(-2), rati(6)));
        assert!(b.div(&a).is_some());
        assert!(a.div(&b).is_none());
    }

    #[test]
    fn poly_enclosure_contains_true_value() {
        let p = RatPoly::from_i64(&[-2, 0, 1]);
        let iv = RatInterval::new(rat(7, 5), rat(3, 2));
        let enc = iv.eval_poly(&p);
        // p(sqrt(2)) = 0 and sqrt(2) is in [7/5, 3/2]
        assert!(enc.contains_zero());
    }

    #[test]
    fn within_tolerance() {
        let a = RatInterval::new(rati(0), rat(1, 1000));
        let b = RatInterval::new(rat(1, 500), rat(3, 1000));
        assert!(a.within(&b, &rat(1, 100)));
        assert!(!a.within(&b, &rat(1, 1000)));
    }
}
