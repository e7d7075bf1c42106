//! Independent checks of every analytic step, and the verification suite that
//! runs them all.

mod grand;
mod jacobi;
mod quadrature;
mod report;
mod suite;

pub use grand::{
    grand_potential_direct, grand_potential_kvd, temperature_for_ratio, KvdResult, Truncation,
};
pub use jacobi::{jacobi_check, JACOBI_TOL};
pub use quadrature::{casimir_integral_quadrature, casimir_summand, zero_mass_reference};
pub use report::OracleReport;
pub use suite::{
    decomposition_poisson_estimate, force_fd_extrapolated, run_verification_suite, SuiteConfig,
    JACOBI_POINTS, KVD_BOUNDARY_RATIO, KVD_VALID_RATIO,
};
