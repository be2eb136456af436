//! Exact decimal rendering of rationals, intervals, and parameter values.
//! Output is deterministic: no float formatting is involved anywhere.

use crate::interval::RatInterval;
use crate::value::ParamValue;
use crate::{rati, Int, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Decimal expansion of `v` with `digits` places, rounded half away from
/// zero.
pub fn decimal(v: &Rat, digits: usize) -> String {
    let sign = if v.is_negative() { "-" } else { "" };
    let a = v.abs();
    let scale = Int::from(10u32).pow(digits as u32);
    // round(a * scale) with ties away from zero
    let scaled = &a * Rat::from_integer(scale.clone());
    let num = scaled.numer().clone();
    let den = scaled.denom().clone();
    let (q, r) = num.div_rem(&den);
    let rounded = if &r * Int::from(2) >= den { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = digits
    )
}

/// Upper bound of `v` as `d.d e±k` with two significant digits, suitable for
/// reporting interval widths.
pub fn width_bound(v: &Rat) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let a = v.abs();
    // find exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = 0;
    let ten = rati(10);
    let mut probe = a.clone();
    if probe >= rati(1) {
        while probe >= ten {
            probe /= ten.clone();
            e += 1;
        }
    } else {
        while probe < rati(1) {
            probe *= ten.clone();
            e -= 1;
        }
    }
    // mantissa to two significant digits, rounded up so the bound is safe
    let scaled = &a * Rat::from_integer(Int::from(10u32)).pow((1 - e) as i32);
    let mant = scaled.ceil().to_integer();
    let (mant, e) = if mant >= Int::from(100) {
        (Int::from(10), e + 1)
    } else {
        (mant, e)
    };
    let m = mant.to_string();
    format!("{}.{}e{}", &m[..1], &m[1..], e)
}

/// `midpoint ± halfwidth` rendering of an interval.
pub fn interval(iv: &RatInterval, digits: usize) -> String {
    if iv.is_point() {
        return format!("{} (exact)", decimal(&iv.lo, digits));
    }
    let half = iv.width() / rati(2);
    format!("{}±{}", decimal(&iv.midpoint(), digits), width_bound(&half))
}

/// Human form of a rational polynomial, highest degree first, e.g.
/// `5t^2 - 10t + 1`.
pub fn poly(p: &crate::RatPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let lead = out.is_empty();
        let mag = c.abs();
        if lead {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_part = if mag == rati(1) && i > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        out.push_str(&coeff_part);
        if i > 0 {
            out.push_str(var);
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    out
}

/// Render a parameter value: exact rationals as `p/q`, algebraic values as a
/// certified interval of width at most `10^-digits`.
pub fn param(v: &ParamValue, digits: usize) -> String {
    match v {
        ParamValue::Exact(r) => r.to_string(),
        ParamValue::Algebraic(root) => {
            let tol = Rat::new(Int::from(1), Int::from(10u32).pow(digits as u32));
            interval(&root.refined(&tol).interval(), digits)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(decimal(&rat(-1, 8), 3), "-0.125");
        assert_eq!(decimal(&rati(7), 2), "7.00");
        assert_eq!(decimal(&rat(1, 2), 0), "1"); // ties away from zero
    }

    #[test]
    fn width_rendering() {
        assert_eq!(width_bound(&rat(1, 1000)), "1.0e-3");
        assert_eq!(width_bound(&rat(25, 10000)), "2.5e-3");
        assert_eq!(width_bound(&rati(150)), "1.5e2");
        // rounded up, never under-reported
        assert_eq!(width_bound(&rat(151, 100)), "1.6e0");
    }

    #[test]
    fn interval_rendering() {
        let iv = RatInterval::new(rat(1, 4), rat(3, 8));
        let s = interval(&iv, 4);
        assert_eq!(s, "0.3125±6.3e-2");
    }
}
