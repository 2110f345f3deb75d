//! The concrete pair `(T_1, T_2)` built from three atomic measures, one
//! free parameter `x > 0`, and the thresholds at which it stops being
//! subnormal.
//!
//! Lattice layout: row `k2 = 0` carries the shift with Berger measure
//! `xi_a`, column `k1 = 0` the shift with weights `b(x)`, and the core
//! `k1, k2 >= 1` has Berger measure `mu_{M cap N}`.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::certificate::{Certificate, Verdict};
use crate::measures::{AtomicMeasure1D, AtomicMeasure2D};
use crate::numerics::{format_rational, inv_pow2, rat, Rational};
use crate::shift1d::{backward_extension_1d, WeightSequence1D};
use crate::shift2d::{
    backward_extension_2d, weights_from_moments2d, BackwardExtensionReport, Direction,
    MomentTable2D, WeightDiagram,
};

/// Columns examined explicitly before the monotone tail takes over.
pub const COLUMN_WINDOW: u64 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LubinError {
    #[error("x must be positive, got {0}")]
    NonPositiveX(String),
    #[error("xi_b(x) has negative mass 1 - 15x/8 at 0 for x = {0} > 8/15")]
    NegativeMass(String),
}

fn inv_pow4(n: u64) -> Rational {
    inv_pow2(2 * n)
}

pub fn xi_a() -> AtomicMeasure1D {
    AtomicMeasure1D::new([
        (rat(0, 1), rat(3, 4)),
        (rat(1, 4), rat(2, 11)),
        (rat(1, 2), rat(1, 22)),
        (rat(1, 1), rat(1, 44)),
    ])
    .expect("valid atoms")
}

/// `(1 - 15x/8) d_0 + x (d_{1/4} + 1/4 d_{1/2} + 5/8 d_1)`.
pub fn xi_b(x: &Rational) -> Result<AtomicMeasure1D, LubinError> {
    check_x(x)?;
    let at_zero = Rational::one() - rat(15, 8) * x;
    if at_zero.is_negative() {
        return Err(LubinError::NegativeMass(format_rational(x)));
    }
    Ok(AtomicMeasure1D::from_signed([
        (rat(0, 1), at_zero),
        (rat(1, 4), x.clone()),
        (rat(1, 2), x * rat(1, 4)),
        (rat(1, 1), x * rat(5, 8)),
    ])
    .expect("nonnegative masses"))
}

pub fn xi_c() -> AtomicMeasure1D {
    AtomicMeasure1D::new([(rat(1, 4), rat(1, 2)), (rat(1, 2), rat(1, 2))]).expect("valid atoms")
}

pub fn mu_m_cap_n() -> AtomicMeasure2D {
    AtomicMeasure2D::new([
        ((rat(1, 4), rat(1, 4)), rat(1, 2)),
        ((rat(1, 2), rat(1, 2)), rat(1, 2)),
    ])
    .expect("valid atoms")
}

/// `1/4 d_(1/4,1/4) + 1/8 d_(1/2,1/2) + 5/8 d_(0,1)`.
pub fn mu_m() -> AtomicMeasure2D {
    AtomicMeasure2D::new([
        ((rat(1, 4), rat(1, 4)), rat(1, 4)),
        ((rat(1, 2), rat(1, 2)), rat(1, 8)),
        ((rat(0, 1), rat(1, 1)), rat(5, 8)),
    ])
    .expect("valid atoms")
}

fn check_x(x: &Rational) -> Result<(), LubinError> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(LubinError::NonPositiveX(format_rational(x)))
    }
}

/// `gamma_k(xi_a) = 2/11 4^-k + 1/22 2^-k + 1/44` for `k >= 1`.
pub fn gamma_a(k: u64) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    rat(2, 11) * inv_pow4(k) + rat(1, 22) * inv_pow2(k) + rat(1, 44)
}

/// `gamma_k(xi_b(x)) / x = 4^-k + 1/4 2^-k + 5/8` for `k >= 1`.
fn gamma_b_over_x(k: u64) -> Rational {
    inv_pow4(k) + rat(1, 4) * inv_pow2(k) + rat(5, 8)
}

/// `gamma_k(xi_b(x))`; defined for every `x > 0`.
pub fn gamma_b(k: u64, x: &Rational) -> Rational {
    if k == 0 {
        Rational::one()
    } else {
        x * gamma_b_over_x(k)
    }
}

/// `gamma_k(xi_c) = 1/2 4^-k + 1/2 2^-k`.
pub fn gamma_c(k: u64) -> Rational {
    rat(1, 2) * (inv_pow4(k) + inv_pow2(k))
}

pub fn weight_a(n: u64) -> Rational {
    gamma_a(n + 1) / gamma_a(n)
}

pub fn weight_b(n: u64, x: &Rational) -> Rational {
    gamma_b(n + 1, x) / gamma_b(n, x)
}

pub fn weight_c(n: u64) -> Rational {
    gamma_c(n + 1) / gamma_c(n)
}

/// The printed squared weights `a_n^2`.
pub fn printed_a(n: u64) -> Rational {
    if n == 0 {
        return rat(1, 11);
    }
    let (p4, p2) = (pow_int(4, n), pow_int(2, n));
    Rational::new(&p4 + &p2 + 2, p4 + 2 * p2 + 8)
}

/// The printed squared weights `b_n^2` for `n >= 1`:
/// `(10 4^n + 2^n + 1) / (10 4^n + 2^{n+1} + 4)`. These coincide with the
/// measure-derived `b_{n+1}^2`, not `b_n^2`.
pub fn printed_b(n: u64) -> Rational {
    let (p4, p2) = (pow_int(4, n), pow_int(2, n));
    Rational::new(10 * &p4 + &p2 + 1, 10 * p4 + 2 * p2 + 4)
}

/// Closed form agreeing with `weight_b(n, x)` for `n >= 1`:
/// `(5 4^n + 2^n + 2) / (5 4^n + 2^{n+1} + 8)`.
pub fn consistent_b(n: u64) -> Rational {
    let (p4, p2) = (pow_int(4, n), pow_int(2, n));
    Rational::new(5 * &p4 + &p2 + 2, 5 * p4 + 2 * p2 + 8)
}

/// The printed squared weights `c_n^2 = (2^{n+1} + 1) / (2^{n+2} + 4)`.
pub fn printed_c(n: u64) -> Rational {
    let p2 = pow_int(2, n);
    Rational::new(2 * &p2 + 1, 4 * p2 + 4)
}

fn pow_int(base: u32, n: u64) -> num_bigint::BigInt {
    num_bigint::BigInt::from(base).pow(n as u32)
}

/// The full moment table of the pair.
pub fn moment2d(k1: u64, k2: u64, x: &Rational) -> Rational {
    match (k1, k2) {
        (_, 0) => gamma_a(k1),
        (0, _) => gamma_b(k2, x),
        _ => x / rat(8, 1) * gamma_c(k1 + k2 - 2),
    }
}

pub fn weights_a() -> WeightSequence1D {
    WeightSequence1D::from_rule("lubin a", Rational::one(), weight_a)
}

/// The norm bound is `max(x, 1)`: `b_n^2` increases to 1 for `n >= 1`.
pub fn weights_b(x: &Rational) -> WeightSequence1D {
    let bound = x.clone().max(Rational::one());
    let x = x.clone();
    WeightSequence1D::from_rule(
        format!("lubin b (x = {})", format_rational(&x)),
        bound,
        move |n| weight_b(n, &x),
    )
}

pub fn weights_c() -> WeightSequence1D {
    WeightSequence1D::from_rule("lubin c", rat(1, 2), weight_c)
}

/// The pair at a fixed rational `x > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LubinFamily {
    x: Rational,
}

impl LubinFamily {
    pub fn new(x: Rational) -> Result<Self, LubinError> {
        check_x(&x)?;
        Ok(LubinFamily { x })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn xi_b(&self) -> Result<AtomicMeasure1D, LubinError> {
        xi_b(&self.x)
    }

    pub fn moment(&self, k1: u64, k2: u64) -> Rational {
        moment2d(k1, k2, &self.x)
    }

    pub fn table(&self) -> MomentTable2D {
        let x = self.x.clone();
        MomentTable2D::from_rule(move |k1, k2| moment2d(k1, k2, &x))
    }

    pub fn diagram(&self) -> WeightDiagram {
        weights_from_moments2d(&self.table())
    }

    /// Berger measure of the whole pair, when it exists.
    pub fn berger_measure(&self) -> Option<AtomicMeasure2D> {
        pair_extension(&self.x).new_measure
    }
}

/// `alpha_(0,m+1)^2`, the first weight of horizontal slice `m + 1`.
pub fn alpha_sq_column0(m: u64) -> Rational {
    // x cancels; any positive value works
    moment2d(1, m + 1, &Rational::one()) / moment2d(0, m + 1, &Rational::one())
}

/// `beta_(n+1,0)^2 = gamma_(n+1,1) / gamma_(n+1,0)`.
pub fn beta_sq_row0(n: u64, x: &Rational) -> Rational {
    moment2d(n + 1, 1, x) / moment2d(n + 1, 0, x)
}

fn lhs_t1(m: u64) -> Rational {
    rat(2, 1) * inv_pow4(m) + inv_pow2(m)
}

/// Horizontal slice `m + 1` of `T_1` is the backward extension of
/// `(xi_c)_{L_m}` by `alpha_(0,m+1)`. After clearing the common factor the
/// test reads `2 4^-m + 2^-m <= 2 4^-m + 2^-m + 5`, so it holds for every
/// `m` and every `x`. The certificate records each `m <= COLUMN_WINDOW`
/// both ways.
pub fn threshold_t1() -> Certificate {
    let steps = (0..=COLUMN_WINDOW)
        .map(|m| {
            let xi = xi_c().restrict_density(m).expect("positive moments");
            let cert = backward_extension_1d(&alpha_sq_column0(m), &xi);
            let lhs = lhs_t1(m);
            let rhs = &lhs + rat(5, 1);
            let diff = &rhs - &lhs;
            let symbolic_ok = lhs <= rhs;
            Certificate::new(format!("slice {}", m + 1), Verdict::from_bool(cert.passed() && symbolic_ok))
                .with_value("lhs", format_rational(&lhs))
                .with_value("rhs", format_rational(&rhs))
                .with_value("difference", format_rational(&diff))
                .with_step(cert)
        })
        .collect();
    Certificate::all_of("threshold_t1", steps)
        .with_value("threshold", "all")
        .with_value("window", COLUMN_WINDOW)
}

/// Largest `x` for which column `n + 1` of `T_2` is a subnormal backward
/// extension of `(xi_c)_{L_n}`:
/// `8 (1/2 4^-n + 1/4 2^-n + 1/4) / (11 (2 4^-n + 2^-n))`.
pub fn column_threshold(n: u64) -> Rational {
    let num = rat(8, 1) * (rat(1, 2) * inv_pow4(n) + rat(1, 4) * inv_pow2(n) + rat(1, 4));
    num / (rat(11, 1) * lhs_t1(n))
}

/// `8/33`, with the certificate of how it was obtained.
pub fn threshold_t2_certificate() -> (Rational, Certificate) {
    let cols: Vec<Rational> = (0..=COLUMN_WINDOW).map(column_threshold).collect();
    let increasing = cols.windows(2).all(|w| w[0] < w[1]);
    // column 0 needs xi_b(x) to be a measure
    let column0 = rat(8, 15);
    let threshold = cols[0].clone().min(column0.clone());
    let cert = Certificate::new("threshold_t2", Verdict::from_bool(increasing))
        .with_value("threshold", format_rational(&threshold))
        .with_value("column0_bound", format_rational(&column0))
        .with_value("column1_bound", format_rational(&cols[0]))
        .with_value("column2_bound", format_rational(&cols[1]))
        .with_value("increasing_through", COLUMN_WINDOW);
    (threshold, cert)
}

pub fn threshold_t2() -> Rational {
    threshold_t2_certificate().0
}

/// `(xi_b(x))_{L_1}`, which does not depend on `x`.
pub fn xi_b_l1() -> AtomicMeasure1D {
    xi_b(&rat(1, 2))
        .map(|m| m.restrict_density(1).expect("positive first moment"))
        .expect("x = 1/2 is admissible")
}

/// First step: `mu_{M cap N}` extended to the left by `alpha_(0,1)^2 = 1/8`
/// against `(xi_b)_{L_1}`, which yields `mu_M`.
pub fn horizontal_extension() -> BackwardExtensionReport {
    backward_extension_2d(&rat(1, 8), &mu_m_cap_n(), &xi_b_l1(), Direction::Horizontal)
}

/// Second step: `mu_M` extended downward by `beta_(0,0)^2 = x` against `xi_a`.
pub fn pair_extension(x: &Rational) -> BackwardExtensionReport {
    let mu = horizontal_extension()
        .new_measure
        .expect("horizontal step always passes");
    backward_extension_2d(x, &mu, &xi_a(), Direction::Vertical)
}

/// `2/11` with the atomwise ratios `xi_a(s) / ((1/t) mu_M)^X(s)`.
pub fn threshold_pair_certificate() -> (Rational, Certificate) {
    let first = horizontal_extension();
    let mu = first.new_measure.clone().expect("horizontal step always passes");
    let scaled = mu.extremal(crate::Axis::Y).expect("no atom on t = 0");
    let norm = mu
        .reciprocal_norm(crate::Axis::Y)
        .finite()
        .cloned()
        .expect("finite");
    let marginal = scaled.scale(&norm).expect("positive").marginal(crate::Axis::X);
    let target = xi_a();
    let mut cert = Certificate::pass("threshold_pair").with_step(first.certificate());
    let mut best = Rational::one() / &norm;
    cert = cert.with_value("reciprocal_norm_bound", format_rational(&best));
    for (s, m) in marginal.atoms() {
        let available = target.mass_at(s).cloned().unwrap_or_else(Rational::zero);
        let ratio = available / m;
        cert = cert.with_value(format!("ratio at {}", format_rational(s)), format_rational(&ratio));
        best = best.min(ratio);
    }
    cert = cert.with_value("threshold", format_rational(&best));
    (best, cert)
}

pub fn threshold_pair() -> Rational {
    threshold_pair_certificate().0
}

pub fn is_t1_subnormal(x: &Rational) -> bool {
    x.is_positive() && threshold_t1().passed()
}

/// Column 0 needs `x <= 8/15`; columns `n + 1 <= COLUMN_WINDOW + 1` are
/// tested by backward extension, and later columns have larger thresholds.
pub fn is_t2_subnormal(x: &Rational) -> bool {
    if !x.is_positive() || xi_b(x).is_err() {
        return false;
    }
    let (_, cert) = threshold_t2_certificate();
    cert.passed()
        && (0..=COLUMN_WINDOW).all(|n| {
            let xi = xi_c().restrict_density(n).expect("positive moments");
            backward_extension_1d(&beta_sq_row0(n, x), &xi).passed()
        })
}

pub fn is_pair_subnormal(x: &Rational) -> bool {
    x.is_positive() && pair_extension(x).pass
}
