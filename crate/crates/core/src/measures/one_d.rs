use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{MeasureError, ReciprocalNorm};
use crate::certificate::Certificate;
use crate::numerics::{format_rational, pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtomicMeasure1D {
    atoms: Vec<(Rational, Rational)>,
}

impl AtomicMeasure1D {
    /// Validates and sorts `(point, mass)` pairs.
    pub fn new(atoms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self, MeasureError> {
        let mut atoms: Vec<_> = atoms.into_iter().collect();
        for (p, m) in &atoms {
            if p.is_negative() {
                return Err(MeasureError::NegativePoint(format_rational(p)));
            }
            if !m.is_positive() {
                return Err(MeasureError::NonPositiveMass {
                    point: format_rational(p),
                    mass: format_rational(m),
                });
            }
        }
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(MeasureError::DuplicatePoint(format_rational(&w[0].0)));
        }
        Ok(AtomicMeasure1D { atoms })
    }

    /// Sums coinciding points and drops atoms whose mass cancels to zero.
    /// Fails if any resulting mass is negative.
    pub fn from_signed(atoms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self, MeasureError> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (p, m) in atoms {
            *merged.entry(p).or_insert_with(Rational::zero) += m;
        }
        Self::new(merged.into_iter().filter(|(_, m)| !m.is_zero()))
    }

    pub fn dirac(point: Rational) -> Self {
        Self::new([(point, Rational::one())]).expect("single unit atom")
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass_at(&self, point: &Rational) -> Option<&Rational> {
        self.atoms
            .binary_search_by(|(p, _)| p.cmp(point))
            .ok()
            .map(|i| &self.atoms[i].1)
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().map(|(_, m)| m).sum()
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass().is_one()
    }

    pub fn max_point(&self) -> Option<&Rational> {
        self.atoms.last().map(|(p, _)| p)
    }

    /// `int s^k dmu`, with `0^0 = 1`.
    pub fn moment(&self, k: u64) -> Rational {
        self.atoms.iter().map(|(p, m)| m * pow(p, k)).sum()
    }

    pub fn reciprocal_norm(&self) -> ReciprocalNorm {
        if self.atoms.iter().any(|(p, _)| p.is_zero()) {
            return ReciprocalNorm::Infinite;
        }
        ReciprocalNorm::Finite(self.atoms.iter().map(|(p, m)| m / p).sum())
    }

    pub fn scale(&self, factor: &Rational) -> Result<Self, MeasureError> {
        Self::new(self.atoms.iter().map(|(p, m)| (p.clone(), m * factor)))
    }

    /// Measure with density `s^i / gamma_i` against `self`: the Berger measure
    /// of the shift restricted past its first `i` basis vectors.
    pub fn restrict_density(&self, i: u64) -> Result<Self, MeasureError> {
        let gamma = self.moment(i);
        if gamma.is_zero() {
            return Err(MeasureError::ZeroMoment(i));
        }
        Self::from_signed(
            self.atoms
                .iter()
                .map(|(p, m)| (p.clone(), m * pow(p, i) / &gamma)),
        )
    }
}

/// Atomwise domination `mu <= nu`. For finitely atomic measures this is
/// equivalent to `mu(E) <= nu(E)` on all Borel sets.
pub fn dominates(mu: &AtomicMeasure1D, nu: &AtomicMeasure1D) -> Certificate {
    let cert = Certificate::pass("domination")
        .with_value("atoms_checked", mu.len());
    for (p, m) in mu.atoms() {
        let available = nu.mass_at(p).cloned().unwrap_or_else(Rational::zero);
        if *m > available {
            return Certificate::fail("domination").with_witness(
                format!("atom {}", format_rational(p)),
                [
                    ("point", format_rational(p)),
                    ("lower_mass", format_rational(m)),
                    ("upper_mass", format_rational(&available)),
                ],
            );
        }
    }
    cert
}
