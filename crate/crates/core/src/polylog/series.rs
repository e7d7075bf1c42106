//! Direct summation of `Li_s(z) = Σ z^n / n^s` with a bounded tail.

use num_complex::Complex64;

use super::expint::scaled_expint;
use super::zeta::bernoulli_over_factorial;
use super::PolylogOrder;
use crate::error::{Error, Result};

/// Largest `|z|` accepted as "on the unit circle" after rounding.
const MODULUS_SLACK: f64 = 1e-14;
const FIRST_CHECKPOINT: u64 = 64;
const MAX_EM_TERMS: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Absolute target for the tail bound.
    pub tol: f64,
    pub max_terms: u64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_terms: 10_000_000,
        }
    }
}

impl SeriesOptions {
    /// Stop only at the rounding floor of the partial sum.
    pub fn precise() -> Self {
        Self {
            tol: f64::MIN_POSITIVE,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// The tail bound dropped below the tolerance.
    Converged,
    /// `max_terms` was reached first; the value carries `tail_bound` of error.
    MaxTerms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMethod {
    /// Plain truncation; the bound is geometric.
    Truncated,
    /// Truncation plus an Euler–Maclaurin estimate of the remaining tail.
    EulerMaclaurin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    /// Number of explicitly summed terms.
    pub terms: u64,
    /// Bound (geometric) or estimate (Euler–Maclaurin) of the error left in `value`.
    pub tail_bound: f64,
    pub stop: StopRule,
    pub method: TailMethod,
}

impl SeriesResult {
    pub fn truncated(&self) -> bool {
        self.stop == StopRule::MaxTerms
    }
}

/// Evaluates `Li_s(z)` for `|z| ≤ 1` from its defining series.
///
/// Terms are added until the tail is below `opts.tol` (or the rounding floor of
/// the sum). For `|z| < 1` the tail bound is `|z|^{N+1} / ((N+1)^s (1-|z|))`.
/// When that converges too slowly the remaining tail `Σ_{n>N} z^n n^{-s}` is
/// estimated by Euler–Maclaurin on `x ↦ z^x x^{-s}`, whose integral term is an
/// incomplete gamma function; the reported bound is then twice the first
/// omitted correction.
pub fn li_series(order: PolylogOrder, z: Complex64, opts: SeriesOptions) -> Result<SeriesResult> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("li_series: non-finite argument {z}")));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 || opts.max_terms == 0 {
        return Err(Error::Domain(
            "li_series: tol must be positive and max_terms at least 1".into(),
        ));
    }
    let modulus = z.norm();
    if modulus > 1.0 + MODULUS_SLACK {
        return Err(Error::Domain(format!(
            "li_series: |z| = {modulus} > 1, series diverges"
        )));
    }
    if modulus == 0.0 {
        return Ok(SeriesResult {
            value: Complex64::new(0.0, 0.0),
            terms: 0,
            tail_bound: 0.0,
            stop: StopRule::Converged,
            method: TailMethod::Truncated,
        });
    }

    let s = order.get();
    let sf = s as f64;
    let log_modulus = modulus.ln().min(0.0);
    let arg = z.arg();
    let w = Complex64::new(log_modulus, arg);
    let term = |n: u64| -> Complex64 {
        let nf = n as f64;
        Complex64::from_polar((nf * log_modulus - sf * nf.ln()).exp(), nf * arg)
    };
    let geometric_bound = |n: u64| -> f64 {
        if modulus < 1.0 {
            let m = (n + 1) as f64;
            ((m * log_modulus - sf * m.ln()).exp()) / (1.0 - modulus)
        } else {
            f64::INFINITY
        }
    };

    // whichever of the geometric bound and the Euler–Maclaurin estimate is
    // sharper; both shrink with n, so the reported bound never grows with
    // max_terms
    let settle = |n: u64, partial: Complex64| -> (Complex64, f64, TailMethod) {
        let geo = geometric_bound(n);
        let (correction, estimate) = euler_maclaurin_tail(s, w, n);
        // below this the estimate only reflects rounding in the correction
        let estimate = estimate.max(4.0 * f64::EPSILON * correction.norm());
        if geo <= estimate {
            (partial, geo, TailMethod::Truncated)
        } else {
            (partial + correction, estimate, TailMethod::EulerMaclaurin)
        }
    };

    let mut partial = Complex64::new(0.0, 0.0);
    let mut n: u64 = 0;
    let mut checkpoint = FIRST_CHECKPOINT.min(opts.max_terms);
    loop {
        n += 1;
        partial += term(n);

        let quick = geometric_bound(n) < effective_tol(opts.tol, partial);
        if quick || n == checkpoint {
            let (value, bound, method) = settle(n, partial);
            let converged = quick || bound < effective_tol(opts.tol, value);
            if converged || n >= opts.max_terms {
                return Ok(SeriesResult {
                    value,
                    terms: n,
                    tail_bound: bound,
                    stop: if converged {
                        StopRule::Converged
                    } else {
                        StopRule::MaxTerms
                    },
                    method,
                });
            }
            checkpoint = checkpoint.saturating_mul(2).min(opts.max_terms);
        }
    }
}

fn effective_tol(tol: f64, value: Complex64) -> f64 {
    tol.max(2.0 * f64::EPSILON * value.norm())
}

/// Euler–Maclaurin for `Σ_{k≥0} h(k)`, `h(x) = e^{w(M+x)} (M+x)^{-s}`, `M = n+1`.
/// Returns the tail estimate and twice the first omitted correction.
fn euler_maclaurin_tail(s: u32, w: Complex64, n: u64) -> (Complex64, f64) {
    let m = (n + 1) as f64;
    let sf = s as f64;
    let lead = (w * m).exp();

    let integral = lead * m.powf(1.0 - sf) * scaled_expint(s, -w * m);
    let h0 = lead * m.powf(-sf);

    // g^{(i)}(M) for g(x) = x^{-s}: (-1)^i (s)_i M^{-s-i}
    let max_order = 2 * MAX_EM_TERMS;
    let mut g = Vec::with_capacity(max_order);
    let mut gi = m.powf(-sf);
    for i in 0..max_order {
        g.push(gi);
        gi *= -(sf + i as f64) / m;
    }
    let mut w_pow = Vec::with_capacity(max_order);
    let mut wp = Complex64::new(1.0, 0.0);
    for _ in 0..max_order {
        w_pow.push(wp);
        wp *= w;
    }
    let derivative = |order: usize| -> Complex64 {
        let mut binom = 1.0;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=order {
            acc += w_pow[order - i] * (binom * g[i]);
            binom = binom * (order - i) as f64 / (i + 1) as f64;
        }
        acc * lead
    };

    let mut tail = integral + h0 * 0.5;
    let mut previous = f64::INFINITY;
    let mut omitted = 0.0;
    for j in 1..=MAX_EM_TERMS {
        let correction = derivative(2 * j - 1) * bernoulli_over_factorial(j);
        let size = correction.norm();
        if size > previous {
            // asymptotic series has started to diverge
            omitted = size;
            break;
        }
        tail -= correction;
        previous = size;
        omitted = size;
        if size <= tail.norm() * 1e-20 {
            break;
        }
    }
    (tail, 2.0 * omitted)
}
