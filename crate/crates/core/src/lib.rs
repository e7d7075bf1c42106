//! Casimir potential and force of a charged, trapped Bose gas confined between
//! two parallel Dirichlet plates in crossed electric and magnetic fields.
//!
//! The crate is organised bottom-up:
//!
//! - [`polylog`]: complex polylogarithm `Li_s(z)` on the closed unit disk.
//! - [`physics`]: the parameter set and every derived scalar (`ω_c`, `λ`, `A`, `u`, `φ`).
//! - [`casimir`]: closed-form and series potentials, analytic and finite-difference forces.
//! - [`oracles`]: brute-force checks of each analytic step and the verification suite.
//! - [`cli`]: sweeps, figure datasets and the `verify` report behind the `bose-casimir` binary.
//!
//! All quantities are evaluated at zero chemical potential (the condensation point).

pub mod casimir;
pub mod cli;
pub mod error;
pub mod oracles;
pub mod physics;
pub mod polylog;

pub use casimir::{ForceSample, PotentialSample, TermSelector};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use physics::{DerivedScalars, PhysicalParams, RegimeTag};
pub use polylog::PolylogOrder;

/// Complex value used for every potential, force and polylogarithm.
pub type ComplexValue = Complex64;

pub(crate) fn ensure_finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
