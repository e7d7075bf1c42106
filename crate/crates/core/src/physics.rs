//! Physical parameter set and the derived scalars every formula consumes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Tolerance on `|A|` below which the field shift counts as zero.
pub const REGIME_TOL: f64 = 1e-12;

/// Mass, charge, light speed, Planck constant `h` (not reduced), Boltzmann
/// constant, temperature, electric field and magnetic field. All strictly
/// positive; the chemical potential is pinned to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub mass: f64,
    pub charge: f64,
    pub light_speed: f64,
    pub planck_h: f64,
    pub boltzmann_k: f64,
    pub temperature: f64,
    pub electric_field: f64,
    pub magnetic_field: f64,
}

impl PhysicalParams {
    /// `m = q = c = h = k_B = T = F = 1` with the given magnetic field.
    pub fn unit(magnetic_field: f64) -> Self {
        Self {
            mass: 1.0,
            charge: 1.0,
            light_speed: 1.0,
            planck_h: 1.0,
            boltzmann_k: 1.0,
            temperature: 1.0,
            electric_field: 1.0,
            magnetic_field,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("mass", self.mass),
            ("charge", self.charge),
            ("light_speed", self.light_speed),
            ("planck_h", self.planck_h),
            ("boltzmann_k", self.boltzmann_k),
            ("temperature", self.temperature),
            ("electric_field", self.electric_field),
            ("magnetic_field", self.magnetic_field),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite and > 0, got {value}"
                )));
            }
        }
        Ok(())
    }

    pub fn with_magnetic_field(self, magnetic_field: f64) -> Self {
        Self {
            magnetic_field,
            ..self
        }
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        Self {
            temperature,
            ..self
        }
    }

    /// Field at which `A` changes sign: `B³ = m²c³F² / (2ħ|q|)`.
    pub fn critical_field(&self) -> f64 {
        let hbar = self.planck_h / (2.0 * PI);
        let c = self.light_speed;
        (self.mass * self.mass * c.powi(3) * self.electric_field.powi(2)
            / (2.0 * hbar * self.charge.abs()))
        .cbrt()
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::unit(2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedScalars {
    /// Cyclotron frequency magnitude `|q|B/(mc)`.
    pub omega_c: f64,
    pub hbar: f64,
    pub beta: f64,
    /// `h / sqrt(2π m k_B T)`.
    pub lambda_thermal: f64,
    /// `(mc²/2)(F²/B²) − ħω_c`.
    pub field_shift_a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeTag {
    /// `A > 0`: `e^φ` on the unit circle, the force oscillates in `d`.
    Oscillatory,
    /// `A < 0`: `φ` real negative, every series converges absolutely.
    Decaying,
    /// `A = 0` within [`REGIME_TOL`].
    Critical,
}

impl RegimeTag {
    pub fn classify(field_shift_a: f64) -> Self {
        if field_shift_a.abs() <= REGIME_TOL {
            Self::Critical
        } else if field_shift_a > 0.0 {
            Self::Oscillatory
        } else {
            Self::Decaying
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Oscillatory => "oscillatory",
            Self::Decaying => "decaying",
            Self::Critical => "critical",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn derive(params: &PhysicalParams) -> Result<DerivedScalars> {
    params.validate()?;
    let PhysicalParams {
        mass,
        charge,
        light_speed,
        planck_h,
        boltzmann_k,
        temperature,
        electric_field,
        magnetic_field,
    } = *params;
    let hbar = planck_h / (2.0 * PI);
    let omega_c = charge.abs() * magnetic_field / (mass * light_speed);
    let beta = 1.0 / (boltzmann_k * temperature);
    let lambda_thermal = planck_h / (2.0 * PI * mass * boltzmann_k * temperature).sqrt();
    let field_shift_a = 0.5 * mass * light_speed * light_speed
        * (electric_field * electric_field / (magnetic_field * magnetic_field))
        - hbar * omega_c;
    Ok(DerivedScalars {
        omega_c,
        hbar,
        beta,
        lambda_thermal,
        field_shift_a,
    })
}

pub fn regime(params: &PhysicalParams) -> Result<RegimeTag> {
    Ok(RegimeTag::classify(derive(params)?.field_shift_a))
}

fn check_distance(d: f64) -> Result<()> {
    if d.is_finite() && d > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("plate separation must be > 0, got {d}")))
    }
}

/// Axial level `ħ²π²n²/(2md²)` of the Dirichlet slab.
pub fn axial_energy(params: &PhysicalParams, d: f64, n_z: u64) -> Result<f64> {
    check_distance(d)?;
    let hbar = params.planck_h / (2.0 * PI);
    let n = n_z as f64;
    Ok(hbar * hbar * PI * PI * n * n / (2.0 * params.mass * d * d))
}

/// Single-particle level `ħω_c(n_x+n_y+1) + ħ²π²n_z²/(2md²) − (mc²/2)(F²/B²)`.
///
/// The drift term is dropped (`k_x = 0`), which leaves the constant offset with
/// the sign it carries inside the grand-potential exponent.
pub fn single_particle_energy(
    params: &PhysicalParams,
    d: f64,
    n_x: u64,
    n_y: u64,
    n_z: u64,
) -> Result<f64> {
    check_distance(d)?;
    if n_x == 0 || n_y == 0 || n_z == 0 {
        return Err(Error::Domain("quantum numbers start at 1".into()));
    }
    let ds = derive(params)?;
    let landau = ds.hbar * ds.omega_c * (n_x + n_y + 1) as f64;
    let offset = field_offset(params);
    Ok(landau + axial_energy(params, d, n_z)? - offset)
}

/// `(mc²/2)(F²/B²)`.
pub(crate) fn field_offset(params: &PhysicalParams) -> f64 {
    let c = params.light_speed;
    0.5 * params.mass * c * c * (params.electric_field / params.magnetic_field).powi(2)
}

/// `u = sqrt(−2 (d/λ)² β A)` on the principal branch: real positive for
/// `A < 0`, `+i|u|` for `A > 0`.
pub fn u_parameter(params: &PhysicalParams, d: f64) -> Result<Complex64> {
    check_distance(d)?;
    let ds = derive(params)?;
    let ratio = d / ds.lambda_thermal;
    let radicand = -2.0 * ratio * ratio * ds.beta * ds.field_shift_a;
    Ok(if radicand >= 0.0 {
        Complex64::new(radicand.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-radicand).sqrt())
    })
}

/// `φ = −√(2π) u`, so that `e^{−√(2π) u n} = e^{φ n}`. `Re φ ≤ 0` always.
pub fn phi_parameter(params: &PhysicalParams, d: f64) -> Result<Complex64> {
    Ok(u_parameter(params, d)? * -(2.0 * PI).sqrt())
}
