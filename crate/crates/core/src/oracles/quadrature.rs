//! `∫₀^∞ x⁻⁶ e^{−px²−q/x²} dx` by adaptive Gauss–Kronrod quadrature.
//!
//! With `t = 1/x²` the integral becomes `½ ∫₀^∞ t^{3/2} e^{−qt − p/t} dt`,
//! which is bounded at the origin and decays exponentially.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const ABS_TOL: f64 = 1e-12;
const REL_TOL: f64 = 1e-13;
const MAX_INTERVALS: usize = 4000;

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
// 7-point Gauss weights at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive G7/K15 on `[a, b]`; returns `(value, error estimate)`.
fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<(f64, f64)> {
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, a, b);
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    while error > ABS_TOL.min(REL_TOL * value.abs()).max(f64::EPSILON * value.abs()) {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::NonFinite(format!(
                "quadrature: no convergence after {MAX_INTERVALS} panels (error {error:e})"
            )));
        }
        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // recompute from the panels to shed the running-sum drift
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok((value, error))
}

/// `∫₀^∞ x⁻⁶ e^{−px²−q/x²} dx` for `p ≥ 0`, `q > 0`.
pub fn casimir_integral_quadrature(p: f64, q: f64) -> Result<f64> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::Domain(format!(
            "quadrature: q must be > 0 for convergence at the origin, got {q}"
        )));
    }
    if !(p.is_finite() && p >= 0.0) {
        return Err(Error::Domain(format!("quadrature: p must be ≥ 0, got {p}")));
    }
    let integrand = |t: f64| {
        if t <= 0.0 {
            0.0
        } else {
            0.5 * t * t.sqrt() * (-q * t - p / t).exp()
        }
    };
    // Cut the t-range where ½ T^{3/2} e^{−qT} / (q − 3/(2T)) is negligible.
    let mut upper = 40.0 / q;
    loop {
        let (value, _) = integrate(integrand, 0.0, upper)?;
        let tail = 0.5 * upper.powf(1.5) * (-q * upper).exp() / (q - 1.5 / upper);
        if tail <= 1e-3 * REL_TOL * value.abs() || value == 0.0 {
            return Ok(value);
        }
        upper *= 2.0;
    }
}

/// Closed summand `(2πu²n + 3√(2π)u + 3/n) e^{−√(2π)un} / (8π²n⁴)`, which the
/// quadrature reproduces at `p = u²/2`, `q = πn²`.
pub fn casimir_summand(u: f64, n: u64) -> f64 {
    let nf = n as f64;
    let r2pi = (2.0 * PI).sqrt();
    (2.0 * PI * u * u * nf + 3.0 * r2pi * u + 3.0 / nf) * (-r2pi * u * nf).exp()
        / (8.0 * PI * PI * nf.powi(4))
}

/// Value at `p = 0`, `q = π`: `Γ(5/2) / (2π^{5/2})` with `Γ(5/2) = 3√π/4`.
pub fn zero_mass_reference() -> f64 {
    0.75 * PI.sqrt() / (2.0 * PI.powf(2.5))
}
