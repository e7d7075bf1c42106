//! Casimir potential and force between the plates.
//!
//! With `φ = −√(2π)u` the potential is
//!
//! ```text
//! Φ_C(d) = K d⁻⁴ Σ_n (φ²n²/3 − φn + 1) e^{φn} / n⁵
//!        = K d⁻⁴ [ φ²/3 · Li₃(e^φ) − φ Li₄(e^φ) + Li₅(e^φ) ],   K = 3 k_B T ħ² / (m² ω_c²)
//! ```
//!
//! and since `φ ∝ d`, `−∂/∂d` follows from `d Li_s(e^φ)/dφ = Li_{s−1}(e^φ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::physics::{derive, phi_parameter, DerivedScalars, PhysicalParams, RegimeTag};
use crate::polylog::{li_exp, PolylogOrder};
use crate::ensure_finite;

/// Which summand family of the potential is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermSelector {
    /// `(φ²/3) e^{φn}/n³`
    #[serde(rename = "n3")]
    OrderN3,
    /// `−φ e^{φn}/n⁴`
    #[serde(rename = "n4")]
    OrderN4,
    /// `e^{φn}/n⁵`
    #[serde(rename = "n5")]
    OrderN5,
    #[serde(rename = "all")]
    All,
}

impl TermSelector {
    pub const SINGLE: [TermSelector; 3] = [Self::OrderN3, Self::OrderN4, Self::OrderN5];
    pub const EVERY: [TermSelector; 4] = [Self::OrderN3, Self::OrderN4, Self::OrderN5, Self::All];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::OrderN3 => "n3",
            Self::OrderN4 => "n4",
            Self::OrderN5 => "n5",
            Self::All => "all",
        }
    }
}

impl fmt::Display for TermSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TermSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "n3" => Ok(Self::OrderN3),
            "n4" => Ok(Self::OrderN4),
            "n5" => Ok(Self::OrderN5),
            "all" => Ok(Self::All),
            other => Err(Error::InvalidParams(format!(
                "unknown term '{other}', expected n3|n4|n5|all"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSample {
    pub d: f64,
    pub value: Complex64,
    pub term: TermSelector,
    /// Number of summed terms, 0 for closed forms.
    pub truncation_n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceSample {
    pub d: f64,
    pub analytic: Complex64,
    pub finite_difference: Option<Complex64>,
    pub term: TermSelector,
}

impl ForceSample {
    /// `|analytic − fd| / max(|analytic|, floor)`, if the FD value is present.
    pub fn relative_discrepancy(&self, floor: f64) -> Option<f64> {
        self.finite_difference
            .map(|fd| (self.analytic - fd).norm() / self.analytic.norm().max(floor))
    }
}

/// `K = 3 k_B T ħ² / (m² ω_c²)`.
pub fn prefactor(params: &PhysicalParams) -> Result<f64> {
    let ds = derive(params)?;
    Ok(prefactor_from(params, &ds))
}

fn prefactor_from(params: &PhysicalParams, ds: &DerivedScalars) -> f64 {
    3.0 * params.boltzmann_k * params.temperature * ds.hbar * ds.hbar
        / (params.mass * params.mass * ds.omega_c * ds.omega_c)
}

fn check_distance(d: f64) -> Result<()> {
    if d.is_finite() && d > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("plate separation must be > 0, got {d}")))
    }
}

fn li(s: u32, phi: Complex64) -> Result<Complex64> {
    li_exp(PolylogOrder::new(s)?, phi)
}

/// Polylogarithms `Li₂..Li₅(e^φ)` at one separation, computed once and shared.
struct Kernel {
    k: f64,
    d: f64,
    phi: Complex64,
    li: [Complex64; 4],
}

impl Kernel {
    fn new(params: &PhysicalParams, d: f64) -> Result<Self> {
        check_distance(d)?;
        let ds = derive(params)?;
        let phi = phi_parameter(params, d)?;
        let li = [li(2, phi)?, li(3, phi)?, li(4, phi)?, li(5, phi)?];
        Ok(Self {
            k: prefactor_from(params, &ds),
            d,
            phi,
            li,
        })
    }

    fn li(&self, s: usize) -> Complex64 {
        self.li[s - 2]
    }

    fn potential(&self, term: TermSelector) -> Complex64 {
        let phi = self.phi;
        let bracket = match term {
            TermSelector::OrderN5 => self.li(5),
            TermSelector::OrderN4 => -phi * self.li(4),
            TermSelector::OrderN3 => phi * phi / 3.0 * self.li(3),
            TermSelector::All => phi * phi / 3.0 * self.li(3) - phi * self.li(4) + self.li(5),
        };
        bracket * (self.k / self.d.powi(4))
    }

    fn force(&self, term: TermSelector) -> Complex64 {
        let phi = self.phi;
        let scale = self.k / self.d.powi(5);
        match term {
            TermSelector::OrderN5 => (self.li(5) * 4.0 - phi * self.li(4)) * scale,
            TermSelector::OrderN4 => (phi * phi * self.li(3) - phi * self.li(4) * 3.0) * scale,
            TermSelector::OrderN3 => {
                phi * phi * (self.li(3) * 2.0 - phi * self.li(2)) * (scale / 3.0)
            }
            TermSelector::All => {
                let p2 = phi * phi;
                let p3 = p2 * phi;
                -(p3 * self.li(2) - p2 * self.li(3) * 5.0 + phi * self.li(4) * 12.0
                    - self.li(5) * 12.0)
                    * (scale / 3.0)
            }
        }
    }
}

/// Partial sum of the potential series up to `n_max`.
pub fn potential_series(
    params: &PhysicalParams,
    d: f64,
    term: TermSelector,
    n_max: u64,
) -> Result<PotentialSample> {
    check_distance(d)?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let k = prefactor(params)?;
    let phi = phi_parameter(params, d)?;
    let (c3, c4, c5) = match term {
        TermSelector::OrderN3 => (phi * phi / 3.0, Complex64::new(0.0, 0.0), 0.0),
        TermSelector::OrderN4 => (Complex64::new(0.0, 0.0), -phi, 0.0),
        TermSelector::OrderN5 => (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1.0),
        TermSelector::All => (phi * phi / 3.0, -phi, 1.0),
    };
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=n_max {
        let nf = n as f64;
        let wave = (phi * nf).exp();
        if wave == Complex64::new(0.0, 0.0) {
            break;
        }
        let inv3 = 1.0 / (nf * nf * nf);
        let inv4 = inv3 / nf;
        sum += wave * (c3 * inv3 + c4 * inv4 + c5 * inv4 / nf);
    }
    Ok(PotentialSample {
        d,
        value: ensure_finite(sum * (k / d.powi(4)), "potential_series")?,
        term,
        truncation_n: n_max,
    })
}

/// Closed polylogarithm form of the potential.
pub fn potential_closed(
    params: &PhysicalParams,
    d: f64,
    term: TermSelector,
) -> Result<PotentialSample> {
    let kernel = Kernel::new(params, d)?;
    Ok(PotentialSample {
        d,
        value: ensure_finite(kernel.potential(term), "potential_closed")?,
        term,
        truncation_n: 0,
    })
}

/// `F_C = −∂Φ_C/∂d` from analytic differentiation of the closed potential.
pub fn force_closed(params: &PhysicalParams, d: f64, term: TermSelector) -> Result<ForceSample> {
    let kernel = Kernel::new(params, d)?;
    Ok(ForceSample {
        d,
        analytic: ensure_finite(kernel.force(term), "force_closed")?,
        finite_difference: None,
        term,
    })
}

/// Potential and force at one separation, sharing the polylogarithm evaluations.
pub fn potential_and_force(
    params: &PhysicalParams,
    d: f64,
    term: TermSelector,
) -> Result<(Complex64, Complex64)> {
    let kernel = Kernel::new(params, d)?;
    Ok((
        ensure_finite(kernel.potential(term), "potential_closed")?,
        ensure_finite(kernel.force(term), "force_closed")?,
    ))
}

/// Central difference `−[Φ(d+h) − Φ(d−h)]/(2h)`, `h = step_fraction · d`.
pub fn force_fd(
    params: &PhysicalParams,
    d: f64,
    term: TermSelector,
    step_fraction: f64,
) -> Result<Complex64> {
    check_distance(d)?;
    if !(step_fraction > 0.0 && step_fraction < 0.1) {
        return Err(Error::Domain(format!(
            "step fraction must lie in (0, 0.1), got {step_fraction}"
        )));
    }
    let h = step_fraction * d;
    let plus = potential_closed(params, d + h, term)?.value;
    let minus = potential_closed(params, d - h, term)?.value;
    let span = (d + h) - (d - h);
    ensure_finite(-(plus - minus) / span, "force_fd")
}

/// Analytic force with the finite-difference value attached.
pub fn force_with_fd(
    params: &PhysicalParams,
    d: f64,
    term: TermSelector,
    step_fraction: f64,
) -> Result<ForceSample> {
    let mut sample = force_closed(params, d, term)?;
    sample.finite_difference = Some(force_fd(params, d, term, step_fraction)?);
    Ok(sample)
}

/// Force expressions as they were originally published, transcribed term for
/// term with `h² = 4π²ħ²` and the canonical `φ`.
///
/// The `n5` and `all` forms coincide with [`force_closed`]. The `n4` form lacks
/// a factor `φ` on its `Li₄` term and the `n3` form carries a prefactor
/// `1/(4π³)` times the derivative of its potential; they are kept only so the
/// verification report can measure the discrepancy.
pub fn literature_force(params: &PhysicalParams, d: f64, term: TermSelector) -> Result<Complex64> {
    let kernel = Kernel::new(params, d)?;
    let ds = derive(params)?;
    let kt = params.boltzmann_k * params.temperature;
    let m = params.mass;
    let w2 = ds.omega_c * ds.omega_c;
    let h2 = params.planck_h * params.planck_h;
    let hbar2 = ds.hbar * ds.hbar;
    let pi2 = PI * PI;
    let phi = kernel.phi;
    let li = |s| kernel.li(s);
    let value = match term {
        TermSelector::OrderN5 => {
            (-phi / 2.0 * li(4) + li(5) * 2.0) * (3.0 * kt * h2 / (2.0 * m * m * pi2 * w2))
                / d.powi(5)
        }
        TermSelector::OrderN4 => {
            (phi * phi * li(3) - li(4) * 3.0) * (3.0 * kt * h2 / (4.0 * m * m * pi2 * w2))
                / d.powi(5)
        }
        TermSelector::OrderN3 => {
            (-phi / 2.0 * li(2) + li(3)) * (-ds.field_shift_a * kt / (m * PI.powi(3) * w2))
                / d.powi(3)
        }
        TermSelector::All => {
            let c = pi2 * hbar2;
            (phi.powu(3) * c * li(2) - phi * phi * (5.0 * c) * li(3) + phi * (12.0 * c) * li(4)
                - li(5) * (12.0 * c))
                * (-kt / (m * m * pi2 * w2))
                / d.powi(5)
        }
    };
    ensure_finite(value, "literature_force")
}

/// Bulk, surface and Casimir parts of the fugacity-expanded potential after the
/// theta-function split of the axial sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    pub bulk: Complex64,
    pub surface: Complex64,
    pub casimir: Complex64,
    /// Geometric bound on the dropped `j > j_max` contributions, relative to the
    /// largest component.
    pub j_tail_bound: f64,
}

impl Decomposition {
    pub fn total(&self) -> Complex64 {
        self.bulk + self.surface + self.casimir
    }
}

/// Splits
///
/// ```text
/// (k_BT)³/(ħ²ω_c²) Σ_j e^{jβA}/j³ [ 1/(2√b) − 1/2 + (1/√b) Σ_n e^{−πn²/b} ],  b = j(λ/d)²
/// ```
///
/// into its three parts. Only defined for `A < 0`, where the `j` sum converges.
pub fn potential_decomposition(
    params: &PhysicalParams,
    d: f64,
    j_max: u64,
    n_max: u64,
) -> Result<Decomposition> {
    check_distance(d)?;
    if j_max == 0 || n_max == 0 {
        return Err(Error::Domain("j_max and n_max must be at least 1".into()));
    }
    let ds = derive(params)?;
    let regime = RegimeTag::classify(ds.field_shift_a);
    if regime != RegimeTag::Decaying {
        return Err(Error::Regime(format!(
            "the fugacity sum over j diverges unless A < 0 (A = {}, {regime})",
            ds.field_shift_a
        )));
    }
    let kt = params.boltzmann_k * params.temperature;
    let pref = kt.powi(3) / (ds.hbar * ds.hbar * ds.omega_c * ds.omega_c);
    let lam_over_d2 = (ds.lambda_thermal / d).powi(2);
    let decay = ds.beta * ds.field_shift_a;

    let (mut bulk, mut surface, mut casimir) = (0.0, 0.0, 0.0);
    for j in 1..=j_max {
        let jf = j as f64;
        let weight = (decay * jf).exp() / (jf * jf * jf);
        if weight == 0.0 {
            break;
        }
        let b = jf * lam_over_d2;
        let root_b = b.sqrt();
        let mut theta = 0.0;
        for n in 1..=n_max {
            let nf = n as f64;
            let t = (-PI * nf * nf / b).exp();
            theta += t;
            if t <= theta * 1e-18 {
                break;
            }
        }
        bulk += weight / (2.0 * root_b);
        surface -= weight / 2.0;
        casimir += weight * theta / root_b;
    }
    // Σ_{n≥1} e^{−πn²/b} ≤ √b/2, so |bracket| ≤ 1/(2√b) + 1 and b grows with j
    let next = (j_max + 1) as f64;
    let weight_tail = (decay * next).exp() / (next * next * next) / (1.0 - decay.exp());
    let bracket_bound = 1.0 / (2.0 * (next * lam_over_d2).sqrt()) + 1.0;
    let largest = bulk.abs().max(surface.abs()).max(casimir.abs());
    let j_tail_bound = if largest > 0.0 {
        weight_tail * bracket_bound / largest
    } else {
        0.0
    };
    let c = |x: f64| Complex64::new(x * pref, 0.0);
    Ok(Decomposition {
        bulk: c(bulk),
        surface: c(surface),
        casimir: c(casimir),
        j_tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polylog::ZETA_5;

    /// Unit parameters with the electric field tuned so that `A = 0`.
    fn critical_params() -> PhysicalParams {
        let mut p = PhysicalParams::unit(2.0);
        // (1/2) F²/B² = ħ B  →  F = B sqrt(2ħB)
        p.electric_field = 2.0 * (2.0 * 2.0 / (2.0 * PI)).sqrt();
        p
    }

    #[test]
    fn term_selector_parses() {
        assert_eq!("N4".parse::<TermSelector>().unwrap(), TermSelector::OrderN4);
        assert!("n6".parse::<TermSelector>().is_err());
    }

    #[test]
    fn critical_regime_potential() {
        let p = critical_params();
        assert!(derive(&p).unwrap().field_shift_a.abs() < 1e-14);
        let k = prefactor(&p).unwrap();
        let d = 1.3;
        let n5 = potential_closed(&p, d, TermSelector::OrderN5).unwrap().value;
        assert!((n5.re - k * ZETA_5 / d.powi(4)).abs() < 1e-15 * n5.re);
        for term in [TermSelector::OrderN3, TermSelector::OrderN4] {
            assert_eq!(potential_closed(&p, d, term).unwrap().value.norm(), 0.0);
            assert_eq!(force_closed(&p, d, term).unwrap().analytic.norm(), 0.0);
        }
        let f5 = force_closed(&p, d, TermSelector::OrderN5).unwrap().analytic;
        assert!((f5.re - 4.0 * k * ZETA_5 / d.powi(5)).abs() < 1e-14 * f5.re);
        let fd = force_fd(&p, d, TermSelector::OrderN5, 1e-4).unwrap();
        assert!((fd - f5).norm() < 1e-7 * f5.norm());
    }

    #[test]
    fn distance_must_be_positive() {
        let p = PhysicalParams::unit(2.0);
        assert!(matches!(
            potential_closed(&p, 0.0, TermSelector::All),
            Err(Error::Domain(_))
        ));
        assert!(potential_series(&p, -1.0, TermSelector::All, 10).is_err());
        assert!(force_closed(&p, f64::NAN, TermSelector::All).is_err());
        assert!(force_fd(&p, 1.0, TermSelector::All, 0.2).is_err());
    }

    #[test]
    fn fd_error_is_second_order() {
        let p = PhysicalParams::unit(2.0);
        let exact = force_closed(&p, 1.0, TermSelector::All).unwrap().analytic;
        let e1 = (force_fd(&p, 1.0, TermSelector::All, 1e-2).unwrap() - exact).norm();
        let e2 = (force_fd(&p, 1.0, TermSelector::All, 5e-3).unwrap() - exact).norm();
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn literature_n3_prefactor_ratio() {
        // printed/canonical = 1/(4π³) for the n3 force
        let p = PhysicalParams::unit(2.0);
        let canonical = force_closed(&p, 1.0, TermSelector::OrderN3).unwrap().analytic;
        let printed = literature_force(&p, 1.0, TermSelector::OrderN3).unwrap();
        let ratio = printed / canonical;
        assert!((ratio.re - 1.0 / (4.0 * PI.powi(3))).abs() < 1e-14);
        assert!(ratio.im.abs() < 1e-14);
    }

    #[test]
    fn literature_n5_matches_canonical() {
        for b in [0.03, 2.0] {
            let p = PhysicalParams::unit(b);
            let a = force_closed(&p, 0.8, TermSelector::OrderN5).unwrap().analytic;
            let l = literature_force(&p, 0.8, TermSelector::OrderN5).unwrap();
            assert!((a - l).norm() <= 1e-13 * a.norm());
        }
    }

    #[test]
    fn decomposition_requires_decaying_regime() {
        let err = potential_decomposition(&PhysicalParams::unit(0.02), 1.0, 10, 10);
        assert!(matches!(err, Err(Error::Regime(_))));
    }

    #[test]
    fn decomposition_bulk_linear_in_d() {
        let p = PhysicalParams::unit(2.0);
        let a = potential_decomposition(&p, 0.5, 400, 1000).unwrap();
        let b = potential_decomposition(&p, 1.5, 400, 1000).unwrap();
        assert!((b.bulk.re / a.bulk.re - 3.0).abs() < 1e-13);
        assert!((b.surface - a.surface).norm() < 1e-15);
    }
}
