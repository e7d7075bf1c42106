//! Brute-force grand potential of the confined gas and its
//! Ketterle–van Druten (KvD) approximation.
//!
//! At zero chemical potential
//!
//! ```text
//! Ω = k_BT Σ_j (1/j) Σ_{n_x,n_y,n_z ≥ 1} e^{−jβε},   ε = ħω_c(n_x+n_y+1) + ħ²π²n_z²/(2md²) − (mc²/2)F²/B²
//!   = k_BT Σ_j (e^{jβA}/j) X_j² Z_j,   X_j = Σ_n e^{−jβħω_c n},   Z_j = Σ_n e^{−jβ ħ²π²n²/(2md²)}
//! ```
//!
//! The KvD form replaces `X_j` by `1/(jβħω_c)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::physics::{axial_energy, derive, DerivedScalars, PhysicalParams, RegimeTag};

/// Dropped tails are kept below this fraction of the sum by [`Truncation::auto`].
const AUTO_REL_TOL: f64 = 1e-15;
/// Inner sums stop once a term falls below this fraction of the partial sum.
const TERM_CUTOFF: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub j_max: u64,
    pub nx_max: u64,
    pub ny_max: u64,
    pub nz_max: u64,
}

impl Truncation {
    pub fn uniform(limit: u64) -> Self {
        Self {
            j_max: limit,
            nx_max: limit,
            ny_max: limit,
            nz_max: limit,
        }
    }

    pub fn doubled(self) -> Self {
        Self {
            j_max: self.j_max * 2,
            nx_max: self.nx_max * 2,
            ny_max: self.ny_max * 2,
            nz_max: self.nz_max * 2,
        }
    }

    /// Limits whose dropped tails are each below 1e-15 of the sum.
    ///
    /// Every `j` summand is at most `r^{j−1}` times the first, with
    /// `r = e^{−βε₁₁₁}`, so the `j` tail is geometric; the Landau sums are
    /// geometric and the axial sum is Gaussian in `n`.
    pub fn auto(params: &PhysicalParams, d: f64) -> Result<Self> {
        let ds = decaying(params)?;
        let x = ds.beta * ds.hbar * ds.omega_c;
        let axial = ds.beta * axial_energy(params, d, 1)?;
        let decay = 2.0 * x + axial - ds.beta * ds.field_shift_a;
        let j_max = ((AUTO_REL_TOL * (-(-decay).exp_m1())).ln() / -decay).ceil().max(1.0);
        let landau = ((1.0 / AUTO_REL_TOL).ln() / x).ceil().max(1.0);

        let mut nz = ((1.0 / AUTO_REL_TOL).ln() / axial + 1.0).sqrt().ceil().max(1.0);
        while axial_tail(axial, nz) > AUTO_REL_TOL * (-axial).exp() {
            nz += 1.0;
        }
        Ok(Self {
            j_max: j_max as u64,
            nx_max: landau as u64,
            ny_max: landau as u64,
            nz_max: nz as u64,
        })
    }
}

/// `Σ_{n>N} e^{−cn²}` bound.
fn axial_tail(c: f64, n_max: f64) -> f64 {
    let next = n_max + 1.0;
    (-c * next * next).exp() / (-(-c * (2.0 * next + 1.0)).exp_m1())
}

fn decaying(params: &PhysicalParams) -> Result<DerivedScalars> {
    let ds = derive(params)?;
    let regime = RegimeTag::classify(ds.field_shift_a);
    if regime != RegimeTag::Decaying {
        return Err(Error::Regime(format!(
            "the fugacity sum Σ_j e^{{jβA}} diverges for A ≥ 0 (A = {}, {regime})",
            ds.field_shift_a
        )));
    }
    Ok(ds)
}

/// `Σ_{n=1}^{limit} e^{−c n^power}` added term by term, stopping once terms
/// no longer register.
fn level_sum(c: f64, power: i32, limit: u64) -> f64 {
    let mut sum = 0.0;
    for n in 1..=limit {
        let t = (-c * (n as f64).powi(power)).exp();
        sum += t;
        if t <= sum * TERM_CUTOFF {
            break;
        }
    }
    sum
}

/// Truncated quadruple sum for the grand potential at `μ = 0`.
pub fn grand_potential_direct(params: &PhysicalParams, d: f64, limits: Truncation) -> Result<Complex64> {
    if limits.j_max == 0 || limits.nx_max == 0 || limits.ny_max == 0 || limits.nz_max == 0 {
        return Err(Error::Domain("truncation limits must be at least 1".into()));
    }
    let ds = decaying(params)?;
    let x = ds.beta * ds.hbar * ds.omega_c;
    let axial = ds.beta * axial_energy(params, d, 1)?;
    let a = ds.beta * ds.field_shift_a;

    let mut total = 0.0;
    for j in 1..=limits.j_max {
        let jf = j as f64;
        let weight = (a * jf).exp() / jf;
        if weight == 0.0 {
            break;
        }
        let sx = level_sum(jf * x, 1, limits.nx_max);
        let sy = if limits.ny_max == limits.nx_max {
            sx
        } else {
            level_sum(jf * x, 1, limits.ny_max)
        };
        let sz = level_sum(jf * axial, 2, limits.nz_max);
        let term = weight * sx * sy * sz;
        total += term;
        if term <= total * TERM_CUTOFF {
            break;
        }
    }
    Ok(Complex64::new(
        params.boltzmann_k * params.temperature * total,
        0.0,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KvdResult {
    pub value: Complex64,
    /// `βħω_c`; the approximation is first order in this ratio.
    pub thermal_ratio: f64,
}

/// `(k_BT)³/(ħω_c)² Σ_j e^{jβA}/j³ Σ_n e^{−jβħ²π²n²/(2md²)}`, truncated.
pub fn grand_potential_kvd(params: &PhysicalParams, d: f64, j_max: u64, n_max: u64) -> Result<KvdResult> {
    if j_max == 0 || n_max == 0 {
        return Err(Error::Domain("j_max and n_max must be at least 1".into()));
    }
    let ds = decaying(params)?;
    let axial = ds.beta * axial_energy(params, d, 1)?;
    let a = ds.beta * ds.field_shift_a;
    let mut total = 0.0;
    for j in 1..=j_max {
        let jf = j as f64;
        let weight = (a * jf).exp() / (jf * jf * jf);
        if weight == 0.0 {
            break;
        }
        let term = weight * level_sum(jf * axial, 2, n_max);
        total += term;
        if term <= total * TERM_CUTOFF {
            break;
        }
    }
    let kt = params.boltzmann_k * params.temperature;
    let hw = ds.hbar * ds.omega_c;
    Ok(KvdResult {
        value: Complex64::new(kt.powi(3) / (hw * hw) * total, 0.0),
        thermal_ratio: ds.beta * hw,
    })
}

/// Temperature at which `βħω_c` equals `ratio`.
pub fn temperature_for_ratio(params: &PhysicalParams, ratio: f64) -> Result<f64> {
    let ds = derive(params)?;
    Ok(ds.hbar * ds.omega_c / (params.boltzmann_k * ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::single_particle_energy;

    #[test]
    fn single_term_is_boltzmann_factor() {
        let p = PhysicalParams::unit(2.0);
        let v = grand_potential_direct(&p, 1.0, Truncation::uniform(1)).unwrap();
        let e = single_particle_energy(&p, 1.0, 1, 1, 1).unwrap();
        assert!((v.re - (-e).exp()).abs() < 1e-16);
    }

    #[test]
    fn oscillatory_regime_rejected() {
        let p = PhysicalParams::unit(0.02);
        assert!(matches!(
            grand_potential_direct(&p, 1.0, Truncation::uniform(10)),
            Err(Error::Regime(_))
        ));
        assert!(matches!(grand_potential_kvd(&p, 1.0, 10, 10), Err(Error::Regime(_))));
    }

    #[test]
    fn doubling_limits_is_a_plateau() {
        let p = PhysicalParams::unit(2.0);
        let t = Truncation::auto(&p, 1.0).unwrap();
        let a = grand_potential_direct(&p, 1.0, t).unwrap();
        let b = grand_potential_direct(&p, 1.0, t.doubled()).unwrap();
        assert!(((a - b) / b).norm() < 1e-12);
    }

    #[test]
    fn kvd_error_is_first_order() {
        let base = PhysicalParams::unit(2.0);
        let p = base.with_temperature(temperature_for_ratio(&base, 1e-3).unwrap());
        let t = Truncation::auto(&p, 1.0).unwrap();
        let direct = grand_potential_direct(&p, 1.0, t).unwrap();
        let kvd = grand_potential_kvd(&p, 1.0, t.j_max, t.nz_max).unwrap();
        assert!((kvd.thermal_ratio - 1e-3).abs() < 1e-15);
        let rel = ((kvd.value - direct) / direct).norm();
        assert!(rel > 2e-4 && rel < 5e-3, "rel = {rel}");
    }
}
