//! Floating-point integration against the arcsine-type density
//! `dmu(s) = ds / (pi sqrt(4s - s^2))` on `[0, 4]`.
//!
//! Substituting `s = 2(1 - cos theta)` gives `ds / sqrt(4s - s^2) = d theta`,
//! so `int f dmu = (1/pi) int_0^pi f(2 - 2 cos theta) d theta`. The new
//! integrand is smooth, even and periodic, where the composite trapezoid rule
//! converges geometrically. Used only for cross-checks; the exact path never
//! touches these values.

use std::f64::consts::PI;

use super::NumericsError;

const MIN_PANELS: usize = 8;
const MAX_PANELS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// `|T_{2m} - T_m|` at the final refinement.
    pub error_estimate: f64,
    pub panels: usize,
}

/// `int f dmu` by trapezoid doubling until the relative change drops below
/// `tolerance`.
pub fn arcsine_expectation(
    f: impl Fn(f64) -> f64,
    tolerance: f64,
) -> Result<QuadratureResult, NumericsError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(NumericsError::Domain(format!(
            "quadrature tolerance must be positive, got {tolerance}"
        )));
    }
    let g = |theta: f64| f(2.0 - 2.0 * theta.cos());
    let mut panels = MIN_PANELS;
    // trapezoid over [0, pi] divided by pi
    let mut sum = 0.5 * (g(0.0) + g(PI)) + (1..panels).map(|j| g(j as f64 * PI / panels as f64)).sum::<f64>();
    let mut estimate = sum / panels as f64;
    loop {
        // the doubled grid only adds the odd nodes
        let added: f64 = (0..panels)
            .map(|j| g((2 * j + 1) as f64 * PI / (2 * panels) as f64))
            .sum();
        sum += added;
        panels *= 2;
        let refined = sum / panels as f64;
        let error = (refined - estimate).abs();
        if error <= tolerance * refined.abs() {
            return Ok(QuadratureResult {
                value: refined,
                error_estimate: error,
                panels,
            });
        }
        if panels >= MAX_PANELS {
            return Err(NumericsError::Convergence {
                achieved: error / refined.abs().max(f64::MIN_POSITIVE),
                requested: tolerance,
            });
        }
        estimate = refined;
    }
}

/// `(1/pi) int_0^4 s^n / sqrt(4s - s^2) ds`, which equals `C(2n, n)`.
pub fn arcsine_moment_quadrature(n: u32, tolerance: f64) -> Result<f64, NumericsError> {
    arcsine_expectation(|s| s.powi(n as i32), tolerance).map(|r| r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_mass_is_one() {
        let v = arcsine_moment_quadrature(0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn second_moment_is_six() {
        let v = arcsine_moment_quadrature(2, 1e-10).unwrap();
        assert!((v - 6.0).abs() / 6.0 < 1e-8);
    }

    #[test]
    fn tenth_moment_is_central_binomial() {
        let v = arcsine_moment_quadrature(10, 1e-10).unwrap();
        assert!((v - 184_756.0).abs() / 184_756.0 < 1e-8);
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        assert!(arcsine_moment_quadrature(1, 0.0).is_err());
        assert!(arcsine_moment_quadrature(1, f64::NAN).is_err());
    }

    #[test]
    fn reports_convergence_failure() {
        // discontinuous integrand converges too slowly for this tolerance
        let err = arcsine_expectation(|s| if s < 1.0 { 0.0 } else { 1.0 }, 1e-15).unwrap_err();
        assert!(matches!(err, NumericsError::Convergence { .. }));
    }
}
