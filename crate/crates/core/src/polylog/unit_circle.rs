//! `Li_s(e^{iθ})` for `s ∈ 2..=5`.
//!
//! One component of `Li_s(e^{iθ})` is a Bernoulli polynomial in `θ` on `[0, 2π]`
//! (the real part for even `s`, the imaginary part for odd `s`). The other is a
//! Clausen-type Fourier series, evaluated here through the expansion of
//! `Li_s(e^μ)` about `μ = 0`:
//!
//! ```text
//! Li_s(e^μ) = Σ_{k≠s-1} ζ(s-k) μ^k / k!  +  μ^{s-1}/(s-1)! (H_{s-1} - ln(-μ))
//! ```
//!
//! which converges for `|μ| < 2π` at rate `(θ/2π)^2` per step once `θ` is
//! folded into `(0, π]`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::zeta::{zeta_even, zeta_small};
use super::PolylogOrder;
use crate::error::{Error, Result};

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Reduces `θ` into `[0, 2π)` with a two-constant remainder so that large
/// phases keep their low-order bits.
pub fn reduce_angle(theta: f64) -> f64 {
    let k = (theta / TWO_PI_HI).floor();
    let mut r = (-k).mul_add(TWO_PI_HI, theta);
    r = (-k).mul_add(TWO_PI_LO, r);
    if r < 0.0 {
        r += TWO_PI_HI;
    }
    if r >= TWO_PI_HI {
        r -= TWO_PI_HI;
    }
    r
}

/// `Li_s(e^{iθ})` for `s ∈ 2..=5` and any finite `θ`.
pub fn li_unit_circle(order: PolylogOrder, theta: f64) -> Result<Complex64> {
    let s = order.get();
    if !(2..=5).contains(&s) {
        return Err(Error::UnsupportedOrder(s));
    }
    if !theta.is_finite() {
        return Err(Error::Domain(format!("li_unit_circle: theta = {theta}")));
    }
    let t = reduce_angle(theta);
    if t == 0.0 {
        return Ok(Complex64::new(zeta_small(s), 0.0));
    }

    let closed = bernoulli_component(s, t);
    // The Clausen component is odd (even s) or even (odd s) about θ = π.
    let (folded, flip) = if t <= PI { (t, 1.0) } else { (TWO_PI_HI - t, -1.0) };
    let clausen = clausen_component(s, folded);
    Ok(if s.is_multiple_of(2) {
        Complex64::new(closed, flip * clausen)
    } else {
        Complex64::new(clausen, closed)
    })
}

/// Σ cos(nθ)/n^s for even s, Σ sin(nθ)/n^s for odd s; valid on `[0, 2π]`.
fn bernoulli_component(s: u32, t: f64) -> f64 {
    let p2 = PI * PI;
    match s {
        2 => p2 / 6.0 - PI * t / 2.0 + t * t / 4.0,
        3 => t * (p2 / 6.0 + t * (-PI / 4.0 + t / 12.0)),
        4 => p2 * p2 / 90.0 + t * t * (-p2 / 12.0 + t * (PI / 12.0 - t / 48.0)),
        5 => t * (p2 * p2 / 90.0 + t * t * (-p2 / 36.0 + t * (PI / 48.0 - t / 240.0))),
        _ => unreachable!(),
    }
}

/// Σ sin(nθ)/n^s for even s, Σ cos(nθ)/n^s for odd s, for `0 < θ ≤ π`.
fn clausen_component(s: u32, t: f64) -> f64 {
    let mu = Complex64::new(0.0, t);
    let mut total = Complex64::new(0.0, 0.0);

    // k = 0 ..= s-2: ζ(s-k) μ^k / k!
    let mut power = Complex64::new(1.0, 0.0);
    let mut factorial = 1.0;
    for k in 0..s - 1 {
        if k > 0 {
            power *= mu;
            factorial *= k as f64;
        }
        total += power * (zeta_small(s - k) / factorial);
    }

    // k = s-1: logarithmic term
    power *= mu;
    factorial *= (s - 1) as f64;
    let harmonic: f64 = (1..s).map(|i| 1.0 / i as f64).sum();
    let log_neg_mu = Complex64::new(t.ln(), -PI / 2.0);
    total += power / factorial * (harmonic - log_neg_mu);

    // k = s: ζ(0) = -1/2
    power *= mu;
    factorial *= s as f64;
    total += power * (-0.5 / factorial);

    // k = s-1+2m: ζ(1-2m) μ^k / k!, whose phase collapses to i^{s-1}
    let ratio = (t / (2.0 * PI)).powi(2);
    let mut scale = t.powi(s as i32 - 1);
    let mut tail = 0.0;
    for m in 1..200usize {
        scale *= ratio;
        let denom: f64 = (0..s as usize).map(|i| (2 * m + i) as f64).product();
        let piece = 2.0 * zeta_even(m) * scale / denom;
        tail += piece;
        if piece <= tail.abs() * 1e-18 {
            break;
        }
    }
    let phase = match (s - 1) % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    total += phase * tail;

    if s.is_multiple_of(2) {
        total.im
    } else {
        total.re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: u32) -> PolylogOrder {
        PolylogOrder::new(s).unwrap()
    }

    // plain Fourier partial sums; for s ≥ 3 the tail after 2e5 terms is < 1e-15
    fn fourier(s: u32, theta: f64, sine: bool, terms: usize) -> f64 {
        (1..=terms)
            .map(|n| {
                let a = n as f64 * theta;
                (if sine { a.sin() } else { a.cos() }) / (n as f64).powi(s as i32)
            })
            .sum()
    }

    #[test]
    fn dilog_at_zero_is_zeta_two() {
        let v = li_unit_circle(order(2), 0.0).unwrap();
        assert_eq!(v, Complex64::new(PI * PI / 6.0, 0.0));
    }

    #[test]
    fn dilog_at_pi() {
        let v = li_unit_circle(order(2), PI).unwrap();
        assert!((v.re + PI * PI / 12.0).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn catalan_constant() {
        // Σ sin(nπ/2)/n² = 1 - 1/9 + 1/25 - ... = G
        let v = li_unit_circle(order(2), PI / 2.0).unwrap();
        assert!((v.im - 0.915_965_594_177_219).abs() < 1e-15);
    }

    #[test]
    fn clausen_components_match_brute_force() {
        for s in 3..=5 {
            for &theta in &[0.3, 1.1, 2.9, 4.0, 6.0] {
                let v = li_unit_circle(order(s), theta).unwrap();
                let (got, want) = if s.is_multiple_of(2) {
                    (v.im, fourier(s, theta, true, 200_000))
                } else {
                    (v.re, fourier(s, theta, false, 200_000))
                };
                assert!((got - want).abs() < 1e-12, "s={s} θ={theta}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn unsupported_order() {
        assert_eq!(li_unit_circle(order(6), 1.0), Err(Error::UnsupportedOrder(6)));
    }

    #[test]
    fn reduction_keeps_low_bits() {
        let theta = 1000.0 * TWO_PI_HI + 0.25;
        assert!((reduce_angle(theta) - 0.25).abs() < 1e-12);
        assert!((reduce_angle(-0.5) - (TWO_PI_HI - 0.5)).abs() < 1e-15);
        assert!(reduce_angle(TWO_PI_HI) < 1e-15);
    }
}
