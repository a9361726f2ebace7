//! Arithmetic in `k[x]/(J + (x)^D)` and Newton lifting of solutions through
//! a smooth presentation.

mod newton;
mod truncated;

use thiserror::Error;

pub use newton::{
    default_truncation, lift_solution, newton_solve, parametrize_solutions, residual, LiftOutcome, NewtonConfig,
    NewtonOutcome,
};
pub use truncated::{TruncatedRing, TruncatedVector};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("element is not a unit in the truncated ring")]
    NotAUnit,
    #[error("the Jacobian of g is singular modulo (x)")]
    SingularJacobian,
    #[error("Newton iteration did not converge within {iterations} steps (residual orders {trace:?})")]
    NoConvergence { iterations: u32, trace: Vec<u32> },
    #[error("{given} iterations is below the minimum {min}")]
    TooFewIterations { given: u32, min: u32 },
    #[error("truncation order {given} is below the required precision {required}")]
    PrecisionTooLow { given: u32, required: u32 },
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
}
