//! Recovers a finitely atomic Berger measure from a finite moment prefix.
//!
//! Finds the shortest linear recurrence `gamma_{j+r} = sum_i c_i gamma_{j+i}`
//! that all supplied moments satisfy, takes the rational roots of
//! `x^r - sum_i c_i x^i` as atoms and solves the Vandermonde system for the
//! masses. Every supplied moment is then re-checked against the result.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::measures::{AtomicMeasure1D, MeasureError};
use crate::numerics::matrix::solve_linear;
use crate::numerics::poly::rational_roots;
use crate::numerics::{pow, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("need at least {needed} moments, got {got}")]
    TooFewMoments { needed: usize, got: usize },
    #[error("moment sequence must start with 1")]
    NotNormalized,
    #[error("no recurrence of order <= {max_atoms} fits the moments")]
    RankExceeded { max_atoms: usize },
    #[error("recurrence polynomial of degree {degree} has only {found} rational roots")]
    NoRationalAtoms { degree: usize, found: usize },
    #[error("fitted measure does not reproduce moment {index}")]
    Inconsistent { index: usize },
    #[error("fitted atoms do not form a positive measure: {0}")]
    InvalidMeasure(MeasureError),
}

pub fn berger_fit(moments: &[Rational], max_atoms: usize) -> Result<AtomicMeasure1D, FitError> {
    let needed = 2 * max_atoms + 1;
    if moments.len() < needed {
        return Err(FitError::TooFewMoments {
            needed,
            got: moments.len(),
        });
    }
    if !moments[0].is_one() {
        return Err(FitError::NotNormalized);
    }
    let (order, coeffs) = (1..=max_atoms)
        .find_map(|r| recurrence(moments, r).map(|c| (r, c)))
        .ok_or(FitError::RankExceeded { max_atoms })?;

    // x^r - sum c_i x^i, lowest degree first
    let mut poly: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
    poly.push(Rational::one());
    let atoms = rational_roots(&poly);
    if atoms.len() != order {
        return Err(FitError::NoRationalAtoms {
            degree: order,
            found: atoms.len(),
        });
    }

    let vandermonde: Vec<Vec<Rational>> = (0..order)
        .map(|i| atoms.iter().map(|a| pow(a, i as u64)).collect())
        .collect();
    let masses = solve_linear(vandermonde, moments[..order].to_vec())
        .expect("distinct atoms give an invertible Vandermonde matrix");

    for (index, gamma) in moments.iter().enumerate() {
        let fitted: Rational = atoms
            .iter()
            .zip(&masses)
            .map(|(a, m)| m * pow(a, index as u64))
            .sum();
        if &fitted != gamma {
            return Err(FitError::Inconsistent { index });
        }
    }
    AtomicMeasure1D::new(atoms.into_iter().zip(masses)).map_err(FitError::InvalidMeasure)
}

/// Coefficients of an order-`r` recurrence satisfied by every window of the
/// data, or `None` when the leading Hankel block is singular or the
/// recurrence breaks somewhere.
fn recurrence(moments: &[Rational], r: usize) -> Option<Vec<Rational>> {
    let hankel: Vec<Vec<Rational>> = (0..r)
        .map(|i| (0..r).map(|j| moments[i + j].clone()).collect())
        .collect();
    let rhs: Vec<Rational> = (0..r).map(|i| moments[i + r].clone()).collect();
    let coeffs = solve_linear(hankel, rhs)?;
    let holds = (0..moments.len() - r).all(|j| {
        let predicted: Rational = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &moments[j + i])
            .fold(Rational::zero(), |acc, t| acc + t);
        predicted == moments[j + r]
    });
    holds.then_some(coeffs)
}
