//! One-variable weighted shifts: weights, moments, Berger measures and
//! the subnormality tests that operate on them.

mod checks;
mod fit;
mod io;
mod weights;

use thiserror::Error;

use crate::measures::MeasureError;

pub use checks::{agler_sums_1d, agler_sums_1d_with, backward_extension_1d, subnormal_necessary};
pub use fit::{berger_fit, FitError};
pub use io::{moments_csv, parse_moments_csv, WeightSpec};
pub use weights::{
    moments_from_weights, restrict, weights_from_measure, MomentSequence, WeightSequence1D,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error("moment gamma_{0} vanishes")]
    ZeroMoment(u64),
    #[error("expected a probability measure, total mass is {0}")]
    NotProbability(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("weight spec: {0}")]
    Spec(String),
}
