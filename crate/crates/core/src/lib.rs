//! Exact moment machinery for one- and two-variable weighted shifts.
//!
//! The crate works with finitely atomic Berger measures in exact rational
//! arithmetic and certifies a commuting pair of subnormal weighted shifts
//! `(T1, T2)` whose sum `T1 + T2` is subnormal for a parameter range strictly
//! larger than the range where the pair itself is jointly subnormal.
//!
//! Modules, bottom-up:
//! - [`numerics`]: rationals, binomial kernels, exact PSD oracle, quadrature.
//! - [`measures`]: atomic measures, marginals, extremal measures, domination.
//! - [`shift1d`]: one-variable shifts, Berger fitting, Agler sums, backward extension.
//! - [`shift2d`]: weight diagrams, 2-D moments, 2-variable backward extension.
//! - [`lubin`]: the concrete counterexample family and its thresholds.
//! - [`agler`]: the certified sum-subnormality range.

pub mod agler;
pub mod certificate;
pub mod exec;
pub mod lubin;
pub mod measures;
pub mod numerics;
pub mod report;
pub mod shift1d;
pub mod shift2d;

pub use certificate::{Certificate, Verdict, Witness};
pub use exec::Exec;
pub use measures::{AtomicMeasure1D, AtomicMeasure2D, Axis, ReciprocalNorm};
pub use numerics::{format_rational, parse_rational, rat, Rational};
