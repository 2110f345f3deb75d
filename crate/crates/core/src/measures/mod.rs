//! Finitely atomic measures on the half-line and the quarter-plane.
//!
//! Atom lists are kept sorted by point so that equality is structural and
//! serialization is deterministic.

mod io;
mod one_d;
mod two_d;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{format_rational, Rational};

pub use io::{parse_measure_json, Measure};
pub use one_d::{dominates, AtomicMeasure1D};
pub use two_d::{marginal_reciprocal_identity, AtomicMeasure2D};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("duplicate atom at {0}")]
    DuplicatePoint(String),
    #[error("atom at {point} has nonpositive mass {mass}")]
    NonPositiveMass { point: String, mass: String },
    #[error("atom at {0} lies outside the nonnegative orthant")]
    NegativePoint(String),
    #[error("reciprocal of the coordinate is not integrable (atom on the axis)")]
    InfiniteReciprocalNorm,
    #[error("moment of order {0} vanishes")]
    ZeroMoment(u64),
    #[error("expected a {expected}-dimensional measure, found {found}")]
    WrongDimension { expected: u8, found: u8 },
    #[error("measure file: {0}")]
    Format(String),
}

/// Coordinate of the quarter-plane: `X` is `s`, `Y` is `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }

    pub fn coord(self, point: &(Rational, Rational)) -> &Rational {
        match self {
            Axis::X => &point.0,
            Axis::Y => &point.1,
        }
    }
}

/// `||1/t||_{L^1}`; non-integrability is a value, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReciprocalNorm {
    Finite(Rational),
    Infinite,
}

impl ReciprocalNorm {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ReciprocalNorm::Finite(v) => Some(v),
            ReciprocalNorm::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ReciprocalNorm::Finite(_))
    }
}

impl fmt::Display for ReciprocalNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReciprocalNorm::Finite(v) => f.write_str(&format_rational(v)),
            ReciprocalNorm::Infinite => f.write_str("inf"),
        }
    }
}
