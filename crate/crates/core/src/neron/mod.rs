//! The desingularization pipeline: input checks, the bordered Jacobian and
//! its adjugate, the `h` and `g` systems, the units `s` and `s'`, and an
//! independent verifier for the resulting presentation.

mod check;
mod construct;
mod input;
mod verify;

use thiserror::Error;

pub use check::{check_input, validate_input, CheckReport, Condition, ConditionKind, Witness};
pub use construct::{border_matrix, build_g, build_h, compute_units, desingularize, GSystem, SmoothPresentation};
pub use input::{AlgebraPresentation, DesingularizationInput, InputError};
pub use verify::{verify_presentation, CertificateCheck, CertificateKind, VerificationReport};

use crate::local::RingError;

/// Rejection message for inputs failing the preliminary checks.
pub const NOT_WELL_CHOSEN: &str = "y', N, (f_1,...,f_r) are not well chosen";

#[derive(Error, Debug, Clone)]
pub enum NeronError<F> {
    #[error("y', N, (f_1,...,f_r) are not well chosen")]
    NotWellChosen(Box<CheckReport<F>>),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Precision `(2e+1)k + c` to which an approximate solution must solve `I`.
pub fn required_precision(e: u32, k: u32, c: u32) -> u32 {
    (2 * e + 1) * k + c
}

#[cfg(test)]
mod tests;
