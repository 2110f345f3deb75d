use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{AtomicMeasure1D, Axis, MeasureError, ReciprocalNorm};
use crate::numerics::{format_rational, pow, Rational};

pub type Point2 = (Rational, Rational);

fn point_str(p: &Point2) -> String {
    format!("({}, {})", format_rational(&p.0), format_rational(&p.1))
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtomicMeasure2D {
    atoms: Vec<(Point2, Rational)>,
}

impl AtomicMeasure2D {
    pub fn new(atoms: impl IntoIterator<Item = (Point2, Rational)>) -> Result<Self, MeasureError> {
        let mut atoms: Vec<_> = atoms.into_iter().collect();
        for (p, m) in &atoms {
            if p.0.is_negative() || p.1.is_negative() {
                return Err(MeasureError::NegativePoint(point_str(p)));
            }
            if !m.is_positive() {
                return Err(MeasureError::NonPositiveMass {
                    point: point_str(p),
                    mass: format_rational(m),
                });
            }
        }
        atoms.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = atoms.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(MeasureError::DuplicatePoint(point_str(&w[0].0)));
        }
        Ok(AtomicMeasure2D { atoms })
    }

    /// Merges coinciding points and drops cancelled atoms.
    pub fn from_signed(atoms: impl IntoIterator<Item = (Point2, Rational)>) -> Result<Self, MeasureError> {
        let mut merged: BTreeMap<Point2, Rational> = BTreeMap::new();
        for (p, m) in atoms {
            *merged.entry(p).or_insert_with(Rational::zero) += m;
        }
        Self::new(merged.into_iter().filter(|(_, m)| !m.is_zero()))
    }

    pub fn dirac(point: Point2) -> Self {
        Self::new([(point, Rational::one())]).expect("single unit atom")
    }

    pub fn atoms(&self) -> &[(Point2, Rational)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().map(|(_, m)| m).sum()
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass().is_one()
    }

    /// `int s^k1 t^k2 dmu`.
    pub fn moment(&self, k1: u64, k2: u64) -> Rational {
        self.atoms
            .iter()
            .map(|((s, t), m)| m * pow(s, k1) * pow(t, k2))
            .sum()
    }

    /// Push-forward along the projection onto `axis`.
    pub fn marginal(&self, axis: Axis) -> AtomicMeasure1D {
        AtomicMeasure1D::from_signed(
            self.atoms
                .iter()
                .map(|(p, m)| (axis.coord(p).clone(), m.clone())),
        )
        .expect("positive masses stay positive")
    }

    pub fn reciprocal_norm(&self, axis: Axis) -> ReciprocalNorm {
        if self.atoms.iter().any(|(p, _)| axis.coord(p).is_zero()) {
            return ReciprocalNorm::Infinite;
        }
        ReciprocalNorm::Finite(self.atoms.iter().map(|(p, m)| m / axis.coord(p)).sum())
    }

    /// Reweights each atom by `1 / (coord * ||1/coord||)`.
    pub fn extremal(&self, axis: Axis) -> Result<Self, MeasureError> {
        let norm = match self.reciprocal_norm(axis) {
            ReciprocalNorm::Finite(n) => n,
            ReciprocalNorm::Infinite => return Err(MeasureError::InfiniteReciprocalNorm),
        };
        Self::new(
            self.atoms
                .iter()
                .map(|(p, m)| (p.clone(), m / (axis.coord(p) * &norm))),
        )
    }

    pub fn scale(&self, factor: &Rational) -> Result<Self, MeasureError> {
        Self::new(self.atoms.iter().map(|(p, m)| (p.clone(), m * factor)))
    }

    /// Exchanges the two coordinates of every atom.
    pub fn swap_axes(&self) -> Self {
        Self::new(
            self.atoms
                .iter()
                .map(|((s, t), m)| ((t.clone(), s.clone()), m.clone())),
        )
        .expect("swap keeps atoms distinct")
    }

    /// `xi` placed on the line `other_axis = 0`.
    pub fn embed(xi: &AtomicMeasure1D, axis: Axis) -> Self {
        Self::new(xi.atoms().iter().map(|(p, m)| {
            let point = match axis {
                Axis::X => (p.clone(), Rational::zero()),
                Axis::Y => (Rational::zero(), p.clone()),
            };
            (point, m.clone())
        }))
        .expect("embedding keeps atoms distinct")
    }
}

/// Checks `||1/t||_{L^1(mu)} == ||1/t||_{L^1(mu^Y)}` exactly, the
/// disintegration identity for the projection onto `Y`.
pub fn marginal_reciprocal_identity(mu: &AtomicMeasure2D) -> Result<bool, MeasureError> {
    let joint = mu
        .reciprocal_norm(Axis::Y)
        .finite()
        .cloned()
        .ok_or(MeasureError::InfiniteReciprocalNorm)?;
    let marginal = mu
        .marginal(Axis::Y)
        .reciprocal_norm()
        .finite()
        .cloned()
        .ok_or(MeasureError::InfiniteReciprocalNorm)?;
    Ok(joint == marginal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    fn mu_mn() -> AtomicMeasure2D {
        AtomicMeasure2D::new([
            ((rat(1, 4), rat(1, 4)), rat(1, 2)),
            ((rat(1, 2), rat(1, 2)), rat(1, 2)),
        ])
        .unwrap()
    }

    fn mu_m() -> AtomicMeasure2D {
        AtomicMeasure2D::new([
            ((rat(1, 4), rat(1, 4)), rat(1, 4)),
            ((rat(1, 2), rat(1, 2)), rat(1, 8)),
            ((int(0), int(1)), rat(5, 8)),
        ])
        .unwrap()
    }

    fn m1(atoms: &[(Rational, Rational)]) -> AtomicMeasure1D {
        AtomicMeasure1D::new(atoms.iter().cloned()).unwrap()
    }

    #[test]
    fn moments() {
        let d = AtomicMeasure2D::dirac((int(1), int(1)));
        assert_eq!(d.moment(3, 5), int(1));
        assert_eq!(mu_mn().moment(1, 1), rat(5, 32));
        assert_eq!(mu_m().moment(0, 1), rat(3, 4));
    }

    #[test]
    fn marginals() {
        assert_eq!(
            mu_mn().marginal(Axis::X),
            m1(&[(rat(1, 4), rat(1, 2)), (rat(1, 2), rat(1, 2))])
        );
        assert_eq!(
            mu_m().marginal(Axis::Y),
            m1(&[(rat(1, 4), rat(1, 4)), (rat(1, 2), rat(1, 8)), (int(1), rat(5, 8))])
        );
        let split = AtomicMeasure2D::new([
            ((int(0), int(1)), rat(1, 2)),
            ((int(0), int(2)), rat(1, 2)),
        ])
        .unwrap();
        assert_eq!(split.marginal(Axis::X), AtomicMeasure1D::dirac(int(0)));
    }

    #[test]
    fn reciprocal_norms() {
        assert_eq!(mu_mn().reciprocal_norm(Axis::X), ReciprocalNorm::Finite(int(3)));
        assert_eq!(mu_m().reciprocal_norm(Axis::Y), ReciprocalNorm::Finite(rat(15, 8)));
        assert_eq!(mu_m().reciprocal_norm(Axis::X), ReciprocalNorm::Infinite);
    }

    #[test]
    fn extremal_measures() {
        let ext = mu_mn().extremal(Axis::X).unwrap();
        assert_eq!(
            ext.marginal(Axis::Y),
            m1(&[(rat(1, 4), rat(2, 3)), (rat(1, 2), rat(1, 3))])
        );
        let ext = mu_m().extremal(Axis::Y).unwrap();
        assert_eq!(
            ext.marginal(Axis::X),
            m1(&[(int(0), rat(1, 3)), (rat(1, 4), rat(8, 15)), (rat(1, 2), rat(2, 15))])
        );
        let d = AtomicMeasure2D::dirac((int(1), int(1)));
        assert_eq!(d.extremal(Axis::X).unwrap(), d);
        assert_eq!(mu_m().extremal(Axis::X), Err(MeasureError::InfiniteReciprocalNorm));
    }

    #[test]
    fn lemma_one_examples() {
        assert!(marginal_reciprocal_identity(&mu_mn()).unwrap());
        assert!(marginal_reciprocal_identity(&mu_m()).unwrap());
        let on_axis = AtomicMeasure2D::dirac((int(1), int(0)));
        assert_eq!(
            marginal_reciprocal_identity(&on_axis),
            Err(MeasureError::InfiniteReciprocalNorm)
        );
    }

    #[test]
    fn swap_and_embed() {
        assert_eq!(mu_m().swap_axes().swap_axes(), mu_m());
        let e = AtomicMeasure2D::embed(&m1(&[(rat(1, 4), int(1))]), Axis::Y);
        assert_eq!(e, AtomicMeasure2D::dirac((int(0), rat(1, 4))));
    }
}
