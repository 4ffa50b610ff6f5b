//! Laplace-Adomian decomposition (LADM) for the Kundu-Eckhaus equation
//!
//! ```text
//! i u_t + u_xx + 2(|u|^2)_x u + |u|^4 u = 0
//! ```
//!
//! Iterates are carried exactly as polynomials in `t` whose coefficients are
//! finite complex harmonic sums `Σ c_k e^{ikx}`. On such integrands the
//! Laplace-domain step `L⁻¹[(1/s) L{·}]` is term-by-term integration in time,
//! so every iterate is produced without quadrature or spatial discretization.
//!
//! Module map:
//!
//! - [`series`]: harmonic polynomials in `x`, polynomials in `t`, and the
//!   time-integration operator.
//! - [`adomian`]: monomial nonlinearities and their Adomian polynomials.
//! - [`solver`]: the equation model, LADM recursion and PDE residual.
//! - [`oracle`]: closed-form reference solution and comparison rows.

pub mod adomian;
pub mod error;
pub mod format;
pub mod oracle;
pub mod series;
pub mod solver;

pub use adomian::{FactorKind, MonomialNonlinearity, NonlinearOperator};
pub use error::{LadmError, Result};
pub use oracle::{ComparisonRow, ExactSolution};
pub use series::{HarmonicPoly, TimeSeries};
pub use solver::{EquationModel, LadmRun, LinearOperator};

pub use num_complex::Complex64;

/// Amplitude used in the reference experiment, `2^(1/16)`.
pub fn reference_beta() -> f64 {
    2f64.powf(1.0 / 16.0)
}
