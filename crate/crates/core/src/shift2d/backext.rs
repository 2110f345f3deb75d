use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::certificate::Certificate;
use crate::measures::{dominates, AtomicMeasure1D, AtomicMeasure2D, Axis, Measure, ReciprocalNorm};
use crate::numerics::{format_rational, Rational};

/// Direction in which the new row or column is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// New row `k2 = 0` below a shift living on `k2 >= 1`; first step is `beta_(0,0)`.
    Vertical,
    /// New column `k1 = 0` left of a shift living on `k1 >= 1`; first step is `alpha_(0,0)`.
    Horizontal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackwardExtensionReport {
    pub pass: bool,
    pub reciprocal_norm: ReciprocalNorm,
    /// `||1/t||^{-1}`, absent when the norm is infinite.
    pub bound: Option<Rational>,
    pub domination: Certificate,
    pub new_measure: Option<AtomicMeasure2D>,
}

impl BackwardExtensionReport {
    pub fn certificate(&self) -> Certificate {
        let mut cert = Certificate::all_of(
            "backward_extension_2d",
            vec![self.domination.clone()],
        )
        .with_value("reciprocal_norm", &self.reciprocal_norm);
        if let Some(b) = &self.bound {
            cert = cert.with_value("bound", format_rational(b));
        }
        if !self.pass && cert.passed() {
            cert.verdict = crate::Verdict::Fail;
        }
        if let Some(mu) = &self.new_measure {
            cert = cert.with_value("new_measure", Measure::Two(mu.clone()).to_json().replace(['\n', ' '], ""));
        }
        cert
    }
}

/// Subnormal backward extension of a two-variable shift.
///
/// Vertical: `mu_sub` is the Berger measure of the shift on `k2 >= 1`,
/// `xi0` that of the row `k2 = 0` viewed as a one-variable shift, and
/// `first_step_sq = beta_(0,0)^2`. The extension is subnormal iff
/// `1/t` is `mu_sub`-integrable, `first_step_sq <= ||1/t||^{-1}` and
/// `first_step_sq ||1/t|| (mu_sub)_ext^X <= xi0`. Its Berger measure is then
/// `first_step_sq ||1/t|| (mu_sub)_ext + (xi0 - first_step_sq ||1/t|| (mu_sub)_ext^X) x delta_0`.
///
/// Horizontal runs the vertical test on coordinate-swapped data.
pub fn backward_extension_2d(
    first_step_sq: &Rational,
    mu_sub: &AtomicMeasure2D,
    xi0: &AtomicMeasure1D,
    direction: Direction,
) -> BackwardExtensionReport {
    match direction {
        Direction::Vertical => vertical(first_step_sq, mu_sub, xi0),
        Direction::Horizontal => {
            let mut report = vertical(first_step_sq, &mu_sub.swap_axes(), xi0);
            report.new_measure = report.new_measure.map(|mu| mu.swap_axes());
            report
        }
    }
}

fn vertical(
    first_step_sq: &Rational,
    mu_sub: &AtomicMeasure2D,
    xi0: &AtomicMeasure1D,
) -> BackwardExtensionReport {
    let reciprocal_norm = mu_sub.reciprocal_norm(Axis::Y);
    let norm = match &reciprocal_norm {
        ReciprocalNorm::Finite(n) => n.clone(),
        ReciprocalNorm::Infinite => {
            return BackwardExtensionReport {
                pass: false,
                reciprocal_norm,
                bound: None,
                domination: Certificate::fail("domination")
                    .with_witness("atom on t = 0", [("reciprocal_norm", "inf")]),
                new_measure: None,
            };
        }
    };
    let bound = Rational::one() / &norm;
    let factor = first_step_sq * &norm;
    let ext = mu_sub
        .extremal(Axis::Y)
        .and_then(|e| e.scale(&factor))
        .expect("finite norm and positive factor keep masses positive");
    let ext_marginal = ext.marginal(Axis::X);
    let domination = dominates(&ext_marginal, xi0);
    let pass = *first_step_sq <= bound && domination.passed();

    let new_measure = pass.then(|| {
        let remainder = xi0
            .atoms()
            .iter()
            .map(|(s, m)| (s.clone(), m - ext_marginal.mass_at(s).cloned().unwrap_or_else(Rational::zero)));
        let bottom = remainder
            .filter(|(_, m)| m.is_positive())
            .map(|(s, m)| ((s, Rational::zero()), m));
        AtomicMeasure2D::from_signed(ext.atoms().iter().cloned().chain(bottom))
            .expect("dominated remainder is nonnegative")
    });

    BackwardExtensionReport {
        pass,
        reciprocal_norm,
        bound: Some(bound),
        domination,
        new_measure,
    }
}
