//! Exact rational arithmetic, binomial kernels, the exact PSD oracle and the
//! floating-point quadrature used for cross-checks.

pub mod binomial;
pub mod matrix;
pub mod poly;
pub mod quadrature;
pub mod rational;

use thiserror::Error;

pub use binomial::{
    alternating_binomial_closed, alternating_binomial_sum, binomial, central_binomial,
    chu_vandermonde_check,
};
pub use matrix::{is_psd, psd_decision, PsdOutcome, SymmetricMatrix};
pub use quadrature::{arcsine_expectation, arcsine_moment_quadrature, QuadratureResult};
pub use rational::{format_rational, int, inv_pow2, is_positive, parse_rational, pow, rat, to_f64, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("cannot parse {input:?} as a rational: {reason}")]
    Parse { input: String, reason: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not converge: relative change {achieved:e} > {requested:e}")]
    Convergence { achieved: f64, requested: f64 },
}
