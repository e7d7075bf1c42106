//! Theta-function transformation
//! `Σ_{n≥1} e^{−πn²b} = (1/(2√b) − 1/2) + (1/√b) Σ_{n≥1} e^{−πn²/b}`.
//!
//! Near `b ≈ 5` the right-hand side is a difference of O(1) numbers that
//! leaves ~1e-7, so both sides are accumulated in double-double. Only the
//! `TwoFloat` operations that are exact to double-double precision are used
//! (`+`, `−`, `×`, division by `f64`, constants); reciprocals and `exp` are
//! formed here.

use num_complex::Complex64;
use twofloat::TwoFloat;

use super::report::{relative, OracleReport};
use crate::error::{Error, Result};

pub const JACOBI_TOL: f64 = 1e-12;

/// Compares both sides of the identity truncated at `n_max`; the bounds on
/// both dropped tails are added to the tolerance.
pub fn jacobi_check(b: f64, n_max: u64) -> Result<OracleReport> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::Domain(format!("jacobi_check: b must be > 0, got {b}")));
    }
    if n_max == 0 {
        return Err(Error::Domain("jacobi_check: n_max must be at least 1".into()));
    }
    let pi = twofloat::consts::PI;
    let b_dd = TwoFloat::from(b);
    let one = TwoFloat::from(1.0);
    // one Newton step each on f64 seeds: 1/b and 1/√b
    let seed = TwoFloat::from(1.0 / b);
    let inv_b = seed + seed * (one - b_dd * seed);
    let seed = TwoFloat::from(1.0 / b.sqrt());
    let inv_root_b = seed + seed * (one - b_dd * seed * seed) * 0.5;

    let theta = |scale: TwoFloat| -> TwoFloat {
        let mut sum = TwoFloat::from(0.0);
        for n in 1..=n_max {
            let n2 = (n * n) as f64;
            let t = exp_dd(-(pi * scale * n2));
            if t.hi() == 0.0 {
                break;
            }
            sum += t;
        }
        sum
    };
    let lhs = theta(b_dd);
    let rhs = (inv_root_b * 0.5 - 0.5) + theta(inv_b) * inv_root_b;

    let lhs_tail = gaussian_tail(b, n_max);
    let rhs_tail = gaussian_tail(1.0 / b, n_max) / b.sqrt();
    let diff = lhs - rhs;
    let abs_error = diff.hi().abs();
    let rhs_size = rhs.hi().abs();
    let tolerance = JACOBI_TOL + relative(lhs_tail + rhs_tail, rhs_size).min(1.0);
    Ok(OracleReport::with_errors(
        format!("jacobi_b{b}"),
        Complex64::new(lhs.hi(), 0.0),
        Complex64::new(rhs.hi(), 0.0),
        abs_error,
        relative(abs_error, rhs_size),
        tolerance,
    ))
}

/// `Σ_{n>N} e^{−πcn²} ≤ e^{−πc(N+1)²} / (1 − e^{−πc(2N+3)})`.
fn gaussian_tail(c: f64, n_max: u64) -> f64 {
    let next = (n_max + 1) as f64;
    (-std::f64::consts::PI * c * next * next).exp()
        / (1.0 - (-std::f64::consts::PI * c * (2.0 * next + 1.0)).exp())
}

/// `e^x` to double-double accuracy: `x = k ln2 + r`, Taylor series for
/// `e^{r/1024}`, then ten squarings.
pub(crate) fn exp_dd(x: TwoFloat) -> TwoFloat {
    if x.hi() < -745.0 {
        return TwoFloat::from(0.0);
    }
    let ln2 = twofloat::consts::LN_2;
    let k = (x.hi() / ln2.hi()).round();
    let r = (x - ln2 * k) / 1024.0;
    let mut term = TwoFloat::from(1.0);
    let mut sum = TwoFloat::from(1.0);
    for i in 1..40 {
        term = term * r / i as f64;
        sum += term;
        if term.hi().abs() < 1e-36 {
            break;
        }
    }
    for _ in 0..10 {
        sum = sum * sum;
    }
    // split the power of two so that neither factor under/overflows
    let half = (k / 2.0).trunc() as i32;
    sum * 2f64.powi(half) * 2f64.powi(k as i32 - half)
}
