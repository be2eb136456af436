//! Parameter values that are either exact rationals or certified algebraic
//! numbers (root intervals with a defining polynomial).

use crate::interval::RatInterval;
use crate::roots::RootInterval;
use crate::{rati, Rat, RatPoly};
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug)]
pub enum ParamValue {
    Exact(Rat),
    Algebraic(RootInterval),
}

impl ParamValue {
    pub fn exact(v: Rat) -> Self {
        ParamValue::Exact(v)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ParamValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            ParamValue::Exact(v) => Some(v),
            ParamValue::Algebraic(r) => r.exact_value(),
        }
    }

    pub fn as_algebraic(&self) -> Option<&RootInterval> {
        match self {
            ParamValue::Algebraic(r) => Some(r),
            ParamValue::Exact(_) => None,
        }
    }

    /// Enclosure of the value with width at most `tol`.
    pub fn interval(&self, tol: &Rat) -> RatInterval {
        match self {
            ParamValue::Exact(v) => RatInterval::point(v.clone()),
            ParamValue::Algebraic(r) => r.refined(tol).interval(),
        }
    }

    /// A defining polynomial with this value as a root: `x - v` for exact
    /// values, the stored polynomial otherwise.
    pub fn defining_poly(&self) -> RatPoly {
        match self {
            ParamValue::Exact(v) => RatPoly::new(vec![-v.clone(), rati(1)]),
            ParamValue::Algebraic(r) => r.defining_poly().clone(),
        }
    }

    /// The squarefree, rational-root-free factor actually isolating the
    /// value; minimal whenever its degree is at most three.
    pub fn minimal_poly(&self) -> RatPoly {
        match self {
            ParamValue::Exact(v) => RatPoly::new(vec![-v.clone(), rati(1)]),
            ParamValue::Algebraic(r) => r.isolating_poly().clone(),
        }
    }

    /// Exact decision of whether the value is a root of `p`.
    pub fn satisfies(&self, p: &RatPoly) -> bool {
        match self {
            ParamValue::Exact(v) => p.eval(v).is_zero(),
            ParamValue::Algebraic(r) => r.satisfies(p),
        }
    }

    /// Certified comparison against a rational.
    pub fn cmp_rational(&self, v: &Rat) -> Ordering {
        match self {
            ParamValue::Exact(x) => x.cmp(v),
            ParamValue::Algebraic(r) => r
                .cmp_rational(v)
                .expect("root interval comparison is decidable"),
        }
    }

    /// Certified strict membership in the open interval `(lo, hi)`.
    pub fn in_open(&self, lo: &Rat, hi: &Rat) -> bool {
        self.cmp_rational(lo) == Ordering::Greater && self.cmp_rational(hi) == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ParamValue::Exact(v) => {
                use num_traits::ToPrimitive;
                v.to_f64().unwrap_or(f64::NAN)
            }
            ParamValue::Algebraic(r) => r.refined(&crate::rat(1, 1_000_000_000)).to_f64(),
        }
    }

    /// Whether two values are certainly equal: identical rationals, or an
    /// algebraic value checked against an exact candidate, or two algebraic
    /// values sharing a defining factor and overlapping intervals.
    pub fn certainly_equal(&self, other: &ParamValue) -> bool {
        match (self, other) {
            (ParamValue::Exact(a), ParamValue::Exact(b)) => a == b,
            (ParamValue::Exact(a), ParamValue::Algebraic(r))
            | (ParamValue::Algebraic(r), ParamValue::Exact(a)) => {
                r.satisfies(&RatPoly::new(vec![-a.clone(), rati(1)]))
                    && r.interval().contains(a)
            }
            (ParamValue::Algebraic(a), ParamValue::Algebraic(b)) => {
                let g = a.isolating_poly().gcd(b.isolating_poly());
                if g.degree().unwrap_or(0) == 0 || !a.satisfies(&g) || !b.satisfies(&g) {
                    return false;
                }
                // refine until either the intervals separate (distinct) or the
                // union of both isolates a single root of the common factor
                let mut ra = a.clone();
                let mut rb = b.clone();
                let mut tol = crate::rat(1, 16);
                loop {
                    if ra.hi() < rb.lo() || rb.hi() < ra.lo() {
                        return false;
                    }
                    let u_lo = ra.lo().min(rb.lo()).clone();
                    let u_hi = ra.hi().max(rb.hi()).clone();
                    if crate::roots::count_roots_in_closed(&g, &u_lo, &u_hi) == 1 {
                        return true;
                    }
                    ra = ra.refined(&tol);
                    rb = rb.refined(&tol);
                    tol /= rati(16);
                }
            }
        }
    }
}

/// All roots of `p` in the open interval `(lo, hi)` as parameter values:
/// rational roots exactly, the rest as certified root intervals. Sorted
/// ascending by the underlying value.
pub fn isolate_params_in(p: &RatPoly, lo: &Rat, hi: &Rat) -> Vec<ParamValue> {
    match crate::roots::isolate_roots_in(p, lo, hi) {
        Err(_) => Vec::new(),
        Ok(roots) => roots
            .into_iter()
            .map(|r| match r.exact_value() {
                Some(v) => ParamValue::Exact(v.clone()),
                None => ParamValue::Algebraic(r),
            })
            .collect(),
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Exact(v) => write!(f, "{}", v),
            ParamValue::Algebraic(r) => {
                write!(f, "root of {:?} in [{}, {}]", r.defining_poly(), r.lo(), r.hi())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::isolate_roots_in;
    use crate::{rat, rati};

    #[test]
    fn exact_membership() {
        let v = ParamValue::exact(rat(1, 3));
        assert!(v.in_open(&rati(0), &rati(1)));
        assert!(!v.in_open(&rat(1, 3), &rati(1)));
    }

    #[test]
    fn algebraic_membership_and_satisfies() {
        let p = RatPoly::from_i64(&[-2, 0, 1]);
        let r = isolate_roots_in(&p, &rati(0), &rati(2)).unwrap()[0].clone();
        let v = ParamValue::Algebraic(r);
        assert!(v.in_open(&rati(1), &rati(2)));
        assert!(v.satisfies(&p));
        assert!(!v.satisfies(&RatPoly::from_i64(&[-3, 0, 1])));
    }

    #[test]
    fn equality_across_representations() {
        let p = RatPoly::from_i64(&[-1, 0, 4]); // roots +-1/2
        let r = isolate_roots_in(&p, &rati(0), &rati(1)).unwrap()[0].clone();
        let v = ParamValue::Algebraic(r);
        assert!(v.certainly_equal(&ParamValue::exact(rat(1, 2))));
        assert!(!v.certainly_equal(&ParamValue::exact(rat(-1, 2))));
    }
}
