//! Exact rational helpers shared by the distribution and ℝ×G layers.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for masses and Gaussian coefficients.
pub type Q = Rational64;

/// Largest denominator accepted when snapping a float back to a rational.
pub const MAX_SNAP_DENOMINATOR: i64 = 1_000_000;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_q(x: &Q) -> String {
    if x.denom() == &1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse {
        position: 0,
        token: t.to_string(),
        message: msg.to_string(),
    };
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: i64 = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d == 0 {
            return Err(err("zero denominator"));
        }
        return Ok(Q::new(n, d));
    }
    if let Ok(n) = t.parse::<i64>() {
        return Ok(Q::from_integer(n));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').ok_or_else(|| err("not a rational"))?;
    if frac_part.len() > 15 || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(err("not a finite decimal"));
    }
    let int: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| err("bad integer part"))?
    };
    let scale = 10i64.pow(frac_part.len() as u32);
    let frac: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| err("bad fractional part"))?
    };
    let v = Q::new(int * scale + frac, scale);
    Ok(if neg { -v } else { v })
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued fractions with the usual semiconvergent step).
pub fn best_rational(x: f64, max_den: i64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let floor = x.floor();
    if floor.abs() > 1e15 {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut frac = x;
    loop {
        let a = frac.floor();
        let ai = a as i64;
        let p2 = ai.checked_mul(p1)?.checked_add(p0)?;
        let q2 = ai.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            // semiconvergent: largest t with t*q1 + q0 <= max_den
            let t = (max_den - q0) / q1.max(1);
            let cand = Q::new(t * p1 + p0, t * q1 + q0);
            let prev = Q::new(p1, q1);
            let err_c = (to_f64(&cand) - x).abs();
            let err_p = (to_f64(&prev) - x).abs();
            return Some(if q1 != 0 && err_p <= err_c { prev } else { cand });
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let rem = frac - a;
        if rem.abs() < 1e-12 || q1 > max_den {
            return Some(Q::new(p1, q1));
        }
        frac = 1.0 / rem;
    }
}

/// Snaps `x` to a rational within `tol`, or `None` when no rational with
/// denominator at most [`MAX_SNAP_DENOMINATOR`] is that close.
pub fn snap(x: f64, tol: f64) -> Option<Q> {
    let r = best_rational(x, MAX_SNAP_DENOMINATOR)?;
    ((to_f64(&r) - x).abs() <= tol).then_some(r)
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(x: &Q) -> Q {
    let f = x - Q::from_integer(x.numer().div_floor(x.denom()));
    debug_assert!(!f.is_negative());
    f
}

pub fn is_integer(x: &Q) -> bool {
    x.denom() == &1 || x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_q("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_q("-2").unwrap(), q(-2, 1));
        assert_eq!(parse_q("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_q("-.5").unwrap(), q(-1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn snaps_small_denominators() {
        assert_eq!(snap(1.0 / 3.0 + 1e-14, 1e-9), Some(q(1, 3)));
        assert_eq!(snap(5.0 / 144.0, 1e-9), Some(q(5, 144)));
        assert_eq!(snap(-7.0 / 12.0, 1e-9), Some(q(-7, 12)));
        assert_eq!(snap(0.0, 1e-9), Some(q(0, 1)));
        assert!(snap(std::f64::consts::PI, 1e-15).is_none());
    }

    #[test]
    fn frac_part_is_in_unit_interval() {
        assert_eq!(frac_part(&q(7, 3)), q(1, 3));
        assert_eq!(frac_part(&q(-1, 3)), q(2, 3));
        assert_eq!(frac_part(&q(2, 1)), q(0, 1));
    }
}
