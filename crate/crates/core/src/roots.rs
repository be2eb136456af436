//! Certified real root isolation for rational polynomials, via Sturm
//! sequences and exact bisection.

use crate::interval::RatInterval;
use crate::{rati, Rat, RatPoly};
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum RootError {
    ZeroPolynomial,
    EmptyDomain,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::ZeroPolynomial => write!(f, "root isolation of the zero polynomial"),
            RootError::EmptyDomain => write!(f, "empty isolation domain"),
        }
    }
}

impl std::error::Error for RootError {}

/// An interval certified to contain exactly one real root of its defining
/// polynomial. A rational root is stored as the degenerate interval
/// `[r, r]`. `from_multiple_root` notes that the root has multiplicity
/// greater than one in the defining polynomial.
#[derive(Clone, Debug)]
pub struct RootInterval {
    poly: RatPoly,
    sqfree: RatPoly,
    lo: Rat,
    hi: Rat,
    from_multiple_root: bool,
}

impl RootInterval {
    /// A degenerate interval for an exact rational root of `poly`.
    pub fn exact(poly: RatPoly, root: Rat) -> Self {
        debug_assert!(poly.eval(&root).is_zero());
        let sqfree = poly.squarefree_part();
        let multiple = !poly.is_zero() && poly.derivative().eval(&root).is_zero();
        RootInterval {
            sqfree,
            poly,
            lo: root.clone(),
            hi: root,
            from_multiple_root: multiple,
        }
    }

    pub fn defining_poly(&self) -> &RatPoly {
        &self.poly
    }

    /// The squarefree factor actually driving bisection.
    pub fn isolating_poly(&self) -> &RatPoly {
        &self.sqfree
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn from_multiple_root(&self) -> bool {
        self.from_multiple_root
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&Rat> {
        if self.is_exact() {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rati(2)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Shrink the interval by bisection until its width is at most `tol`.
    /// The root is never lost; hitting it exactly collapses the interval.
    pub fn refined(&self, tol: &Rat) -> Self {
        let mut out = self.clone();
        out.refine_in_place(tol);
        out
    }

    pub fn refine_in_place(&mut self, tol: &Rat) {
        if self.is_exact() {
            return;
        }
        let mut flo = self.sqfree.eval(&self.lo);
        debug_assert!(!flo.is_zero(), "open isolating interval");
        while self.width() > *tol {
            let mid = self.midpoint();
            let fmid = self.sqfree.eval(&mid);
            if fmid.is_zero() {
                self.lo = mid.clone();
                self.hi = mid;
                return;
            }
            if (fmid.is_negative() && flo.is_negative())
                || (fmid.is_positive() && flo.is_positive())
            {
                self.lo = mid;
                flo = fmid;
            } else {
                self.hi = mid;
            }
        }
    }

    /// Whether the algebraic number in this interval is a root of `p`,
    /// decided exactly: the common factor of `p` and the defining polynomial
    /// must account for the unique root in the interval.
    pub fn satisfies(&self, p: &RatPoly) -> bool {
        if p.is_zero() {
            return true;
        }
        if let Some(r) = self.exact_value() {
            return p.eval(r).is_zero();
        }
        let g = self.sqfree.gcd(p);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        count_roots_in_closed(&g, &self.lo, &self.hi) == 1
    }

    /// Certified strict comparison against a rational bound; refines until
    /// the interval separates from `v`. Returns `None` if the root equals
    /// `v` (only possible when the root is rational).
    pub fn cmp_rational(&self, v: &Rat) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        if let Some(r) = self.exact_value() {
            return Some(r.cmp(v));
        }
        if self.sqfree.eval(v).is_zero() && self.contains_candidate(v) {
            // the unique root in the interval is v itself
            return Some(Ordering::Equal);
        }
        let mut iv = self.clone();
        loop {
            if iv.hi < *v {
                return Some(Ordering::Less);
            }
            if iv.lo > *v {
                return Some(Ordering::Greater);
            }
            if iv.is_exact() {
                return Some(iv.lo.cmp(v));
            }
            let tol = iv.width() / rati(4);
            iv.refine_in_place(&tol);
        }
    }

    fn contains_candidate(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

/// Signs of the Sturm chain of `p` evaluated at `x`, counted as variations.
fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(&RatPoly::zero() - &r);
    }
    chain
}

fn sign_variations_at(chain: &[RatPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for q in chain {
        let v = q.eval(x);
        if v.is_zero() {
            continue;
        }
        let sign = v.is_positive();
        if let Some(prev) = last {
            if prev != sign {
                count += 1;
            }
        }
        last = Some(sign);
    }
    count
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn count_roots_in(p: &RatPoly, lo: &Rat, hi: &Rat) -> usize {
    assert!(!p.is_zero());
    if lo >= hi {
        return 0;
    }
    let mut q = p.squarefree_part();
    // endpoint roots are excluded from an open interval
    for e in [lo, hi] {
        while q.eval(e).is_zero() {
            q = q
                .div_exact(&RatPoly::new(vec![-e.clone(), rati(1)]))
                .expect("factor of detected root");
        }
    }
    if q.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let chain = sturm_chain(&q);
    sign_variations_at(&chain, lo) - sign_variations_at(&chain, hi)
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub fn count_roots_in_closed(p: &RatPoly, lo: &Rat, hi: &Rat) -> usize {
    let sq = p.squarefree_part();
    let mut n = count_roots_in(p, lo, hi);
    if sq.eval(lo).is_zero() {
        n += 1;
    }
    if hi > lo && sq.eval(hi).is_zero() {
        n += 1;
    }
    n
}

/// Isolate all distinct real roots of `p` in the open interval `(lo, hi)`.
/// Rational roots come back as exact degenerate intervals; the remaining
/// roots get disjoint isolating intervals over the rational-root-free part.
pub fn isolate_roots_in(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<Vec<RootInterval>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(RootError::EmptyDomain);
    }
    let sq_full = p.squarefree_part();
    let multiple_possible = p.degree() != sq_full.degree();
    let mut out = Vec::new();
    let mut deflated = sq_full;
    let mut rationals = Vec::new();
    for r in rational_roots(p) {
        let linear = RatPoly::new(vec![-r.clone(), rati(1)]);
        if let Some(q) = deflated.div_exact(&linear) {
            deflated = q;
        }
        if &r > lo && &r < hi {
            let multiple = multiple_possible && p.derivative().eval(&r).is_zero();
            out.push(RootInterval {
                poly: p.clone(),
                sqfree: RatPoly::new(vec![-r.clone(), rati(1)]),
                lo: r.clone(),
                hi: r.clone(),
                from_multiple_root: multiple,
            });
            rationals.push(r);
        }
    }
    if deflated.degree().unwrap_or(0) >= 1 {
        let mut irr = Vec::new();
        subdivide(p, &deflated, lo, hi, multiple_possible, &mut irr);
        // keep isolating intervals clear of the exact rational roots
        for ri in &mut irr {
            while rationals.iter().any(|r| &ri.lo <= r && r <= &ri.hi) {
                let tol = ri.width() / rati(4);
                ri.refine_in_place(&tol);
            }
        }
        out.extend(irr);
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

fn subdivide(
    p: &RatPoly,
    sq: &RatPoly,
    lo: &Rat,
    hi: &Rat,
    multiple_possible: bool,
    out: &mut Vec<RootInterval>,
) {
    let n = count_roots_in(sq, lo, hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        // shrink away from endpoint roots so that bisection sees a sign change
        let mut a = lo.clone();
        let mut b = hi.clone();
        if sq.eval(&a).is_zero() {
            a = shaved_endpoint(sq, &a, &b, true);
        }
        if sq.eval(&b).is_zero() {
            b = shaved_endpoint(sq, &a, &b, false);
        }
        let multiple = multiple_possible && {
            let g = p.gcd(&p.derivative());
            count_roots_in_closed(&g, &a, &b) == 1
        };
        out.push(RootInterval {
            poly: p.clone(),
            sqfree: sq.clone(),
            lo: a,
            hi: b,
            from_multiple_root: multiple,
        });
        return;
    }
    let mid = (lo + hi) / rati(2);
    if sq.eval(&mid).is_zero() {
        let multiple = multiple_possible && p.gcd(&p.derivative()).eval(&mid).is_zero();
        out.push(RootInterval {
            poly: p.clone(),
            sqfree: sq.clone(),
            lo: mid.clone(),
            hi: mid.clone(),
            from_multiple_root: multiple,
        });
    }
    subdivide(p, sq, lo, &mid, multiple_possible, out);
    subdivide(p, sq, &mid, hi, multiple_possible, out);
}

/// Move one endpoint of `(a, b)` inward past the endpoint root without
/// crossing the single interior root of the squarefree `sq`.
fn shaved_endpoint(sq: &RatPoly, a: &Rat, b: &Rat, from_left: bool) -> Rat {
    let mut delta = (b - a) / rati(4);
    loop {
        let cand = if from_left { a + &delta } else { b - &delta };
        if !sq.eval(&cand).is_zero() {
            let still_one = if from_left {
                count_roots_in(sq, &cand, b) == 1
            } else {
                count_roots_in(sq, a, &cand) == 1
            };
            if still_one {
                return cand;
            }
        }
        delta = &delta / rati(4);
    }
}

/// Cauchy bound: all real roots of `p` lie strictly inside `(-B, B)`.
pub fn root_bound(p: &RatPoly) -> Rat {
    let lead = p.leading().expect("nonzero polynomial").clone();
    let mut max = Rat::zero();
    for c in p.coeffs() {
        let q = (c / &lead).abs();
        if q > max {
            max = q;
        }
    }
    max + rati(1)
}

/// Isolate all strictly positive roots of `p`.
pub fn isolate_positive_roots(p: &RatPoly) -> Result<Vec<RootInterval>, RootError> {
    let bound = root_bound(p);
    isolate_roots_in(p, &Rat::zero(), &bound)
}

/// Rational roots of `p` (via the rational root theorem on the integer
/// normalization), each with its multiplicity factored out.
pub fn rational_roots(p: &RatPoly) -> Vec<Rat> {
    if p.is_zero() {
        return Vec::new();
    }
    let n = p.integer_normalized();
    let deg = match n.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    // collect divisors of the constant term and leading coefficient
    let tail_idx = (0..=deg).find(|&i| !n.coeff(i).is_zero()).unwrap();
    let tail = n.coeff(tail_idx).to_integer();
    let lead = n.coeff(deg).to_integer();
    let mut roots = Vec::new();
    if tail_idx > 0 {
        roots.push(Rat::zero());
    }
    let divisors = |v: crate::Int| -> Vec<crate::Int> {
        let v = if v.is_negative() { -v } else { v };
        let mut out = Vec::new();
        let mut d = crate::Int::from(1);
        while &d * &d <= v {
            if (&v % &d).is_zero() {
                out.push(d.clone());
                out.push(&v / &d);
            }
            d += crate::Int::from(1);
        }
        out
    };
    for num in divisors(tail) {
        for den in divisors(lead.clone()) {
            for sign in [1i64, -1] {
                let cand = Rat::new(num.clone() * crate::Int::from(sign), den.clone());
                if n.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rati, RatPoly};

    #[test]
    fn isolate_page_quartic() {
        // -3 + 18x^2 - 16x^3 + 5x^4 has exactly one root in (0, 1)
        let p = RatPoly::from_i64(&[-3, 0, 18, -16, 5]);
        let roots = isolate_roots_in(&p, &rati(0), &rati(1)).unwrap();
        assert_eq!(roots.len(), 1);
        let r = roots[0].refined(&rat(1, 1_000_000));
        let mid = r.to_f64();
        assert!((mid - 0.52).abs() < 0.005, "root near 0.52, got {mid}");
    }

    #[test]
    fn endpoint_roots_are_excluded() {
        // 1 - z^2 on (-1, 1) has no roots (both roots are endpoints)
        let p = RatPoly::from_i64(&[1, 0, -1]);
        let roots = isolate_roots_in(&p, &rati(-1), &rati(1)).unwrap();
        assert!(roots.is_empty());
        assert_eq!(count_roots_in(&p, &rati(-1), &rati(1)), 0);
    }

    #[test]
    fn refine_sqrt13() {
        let p = RatPoly::from_i64(&[-13, 0, 1]);
        let roots = isolate_roots_in(&p, &rati(0), &rati(10)).unwrap();
        assert_eq!(roots.len(), 1);
        let tol = rat(1, 1_000_000_000_000);
        let r = roots[0].refined(&tol);
        assert!(r.width() <= tol);
        // bisection oracle digits: sqrt(13) = 3.605551275463...
        let expect = 3.605551275463989;
        assert!((r.to_f64() - expect).abs() < 1e-11);
        // still contains the root: sign change across the interval
        assert!(r.interval().eval_poly(&p).contains_zero());
    }

    #[test]
    fn refine_sqrt5() {
        let p = RatPoly::from_i64(&[-5, 0, 1]);
        let r = isolate_roots_in(&p, &rati(2), &rati(3)).unwrap()[0]
            .refined(&rat(1, 1_000_000_000_000));
        assert!((r.to_f64() - 2.23606797749979).abs() < 1e-11);
    }

    #[test]
    fn exact_rational_root_degenerates() {
        // 2x - 1 has the exact root 1/2
        let p = RatPoly::from_i64(&[-1, 2]);
        let roots = isolate_roots_in(&p, &rati(0), &rati(1)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact_value(), Some(&rat(1, 2)));
        assert!(roots[0].width().is_zero());
    }

    #[test]
    fn subdivision_point_root_emitted_degenerate() {
        // roots at 1/2 (the first bisection point of (0,1)) and at 1/4, 3/4
        let p = &(&RatPoly::new(vec![rat(-1, 2), rati(1)])
            * &RatPoly::new(vec![rat(-1, 4), rati(1)]))
            * &RatPoly::new(vec![rat(-3, 4), rati(1)]);
        let roots = isolate_roots_in(&p, &rati(0), &rati(1)).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|r| r.exact_value() == Some(&rat(1, 2))));
    }

    #[test]
    fn multiplicity_flag() {
        let p = &RatPoly::from_i64(&[-1, 1]).pow(2) * &RatPoly::from_i64(&[-2, 1]);
        let roots = isolate_roots_in(&p, &rati(0), &rati(5)).unwrap();
        assert_eq!(roots.len(), 2);
        let near_one = roots.iter().find(|r| r.interval().contains(&rati(1))).unwrap();
        assert!(near_one.from_multiple_root());
        let near_two = roots.iter().find(|r| r.interval().contains(&rati(2))).unwrap();
        assert!(!near_two.from_multiple_root());
    }

    #[test]
    fn sturm_count_matches_variation_count() {
        // x (x^2 - 1)(x^2 - 4): five distinct roots in (-3, 3)
        let q = &(&RatPoly::from_i64(&[0, 1]) * &RatPoly::from_i64(&[-1, 0, 1]))
            * &RatPoly::from_i64(&[-4, 0, 1]);
        let roots = isolate_roots_in(&q, &rati(-3), &rati(3)).unwrap();
        assert_eq!(roots.len(), 5);
        assert_eq!(count_roots_in(&q, &rati(-3), &rati(3)), 5);
    }

    #[test]
    fn satisfies_defining_polynomial() {
        let p = RatPoly::from_i64(&[-13, 0, 1]);
        let r = isolate_roots_in(&p, &rati(3), &rati(4)).unwrap()[0].clone();
        assert!(r.satisfies(&p));
        // also satisfies any multiple of it
        let m = &p * &RatPoly::from_i64(&[1, 1]);
        assert!(r.satisfies(&m));
        // but not a polynomial with the conjugate root only in range
        let other = RatPoly::from_i64(&[-5, 0, 1]);
        assert!(!r.satisfies(&other));
    }

    #[test]
    fn rational_roots_of_cubic() {
        // 3c^3 - 14c^2 + 17c - 2 has the rational root 2
        let p = RatPoly::from_i64(&[-2, 17, -14, 3]);
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![rati(2)]);
    }

    #[test]
    fn cmp_rational_strict() {
        let p = RatPoly::from_i64(&[-2, 0, 1]);
        let r = isolate_roots_in(&p, &rati(0), &rati(2)).unwrap()[0].clone();
        assert_eq!(r.cmp_rational(&rati(1)), Some(std::cmp::Ordering::Greater));
        assert_eq!(r.cmp_rational(&rati(2)), Some(std::cmp::Ordering::Less));
    }
}
