//! Complex polylogarithm `Li_s(z) = Σ_{n≥1} z^n / n^s` for integer `s ≥ 2` on the
//! closed unit disk.
//!
//! [`li_series`] sums the definition directly and is the reference evaluator.
//! [`li_unit_circle`] uses closed forms on `|z| = 1`, where the physical force
//! oscillates. [`li_exp`] takes the exponent `φ` of `z = e^φ` and picks one.

mod expint;
mod series;
mod unit_circle;
mod zeta;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use series::{li_series, SeriesOptions, SeriesResult, StopRule, TailMethod};
pub use unit_circle::{li_unit_circle, reduce_angle};
pub use zeta::{zeta_small, ZETA_3, ZETA_5};

/// `|Re φ|` below which `e^φ` is treated as lying on the unit circle.
pub const UNIT_CIRCLE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolylogOrder(u32);

impl PolylogOrder {
    pub fn new(s: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::Domain(format!(
                "polylogarithm order {s} < 2 is not supported"
            )));
        }
        Ok(Self(s))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// `Li_s(e^φ)` for `Re φ ≤ 0`.
pub fn li_exp(order: PolylogOrder, phi: Complex64) -> Result<Complex64> {
    if !(phi.re.is_finite() && phi.im.is_finite()) {
        return Err(Error::Domain(format!("li_exp: non-finite exponent {phi}")));
    }
    if phi.re > UNIT_CIRCLE_TOL {
        return Err(Error::Domain(format!(
            "li_exp: Re(phi) = {} > 0 puts e^phi outside the unit disk",
            phi.re
        )));
    }
    if phi.re.abs() <= UNIT_CIRCLE_TOL && (2..=5).contains(&order.get()) {
        return li_unit_circle(order, phi.im);
    }
    let z = if phi.re.abs() <= UNIT_CIRCLE_TOL {
        Complex64::from_polar(1.0, phi.im)
    } else {
        phi.exp()
    };
    Ok(li_series(order, z, SeriesOptions::precise())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn order(s: u32) -> PolylogOrder {
        PolylogOrder::new(s).unwrap()
    }

    #[test]
    fn order_below_two_rejected() {
        assert!(PolylogOrder::new(1).is_err());
        assert!(PolylogOrder::new(0).is_err());
    }

    #[test]
    fn li_exp_at_zero_is_zeta() {
        let v = li_exp(order(5), Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(v, Complex64::new(ZETA_5, 0.0));
    }

    #[test]
    fn li_exp_real_exponent() {
        // Σ e^{-n}/n³ to 60 terms; mpmath gives 0.386995424210...
        let want: f64 = (1..=60).rev().map(|n| (-(n as f64)).exp() / (n as f64).powi(3)).sum();
        let v = li_exp(order(3), Complex64::new(-1.0, 0.0)).unwrap();
        assert!((v.re - want).abs() < 1e-15 * want);
        assert!((v.re - 0.386_995_424_210).abs() < 1e-12);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn li_exp_minus_one() {
        let v = li_exp(order(4), Complex64::new(0.0, PI)).unwrap();
        assert!((v.re + 7.0 * PI.powi(4) / 720.0).abs() < 1e-15);
    }

    #[test]
    fn li_exp_rejects_positive_real_part() {
        assert!(matches!(
            li_exp(order(2), Complex64::new(1e-6, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn li_exp_high_order_falls_back_to_series() {
        let v = li_exp(order(7), Complex64::new(0.0, 1.0)).unwrap();
        let want: Complex64 = (1..=2000)
            .map(|n| Complex64::from_polar(1.0, n as f64) / (n as f64).powi(7))
            .sum();
        assert!((v - want).norm() < 1e-15);
    }
}
