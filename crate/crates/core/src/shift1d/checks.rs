use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::WeightSequence1D;
use crate::certificate::{Certificate, Verdict};
use crate::exec::{self, Exec};
use crate::measures::{AtomicMeasure1D, ReciprocalNorm};
use crate::numerics::{binomial, format_rational, is_psd, Rational, SymmetricMatrix};

/// Positivity of the Hankel matrices `[gamma_{i+j}]` and `[gamma_{i+j+1}]`
/// for `0 <= i, j <= order`. Both are necessary for a Berger measure on
/// `[0, infinity)` to exist.
pub fn subnormal_necessary(w: &WeightSequence1D, order: usize) -> Certificate {
    let size = order + 1;
    let gammas = w.moment_prefix(2 * size + 1);
    let hankel = SymmetricMatrix::hankel(size, 0, |k| gammas[k].clone());
    let shifted = SymmetricMatrix::hankel(size, 1, |k| gammas[k].clone());
    let mut h = is_psd(&hankel);
    h.check = "hankel".into();
    let mut s = is_psd(&shifted);
    s.check = "shifted_hankel".into();
    Certificate::all_of("subnormal_necessary", vec![h, s])
        .with_value("sequence", w.name())
        .with_value("order", order)
}

/// Agler sums `sum_{l=0..n} (-1)^l C(n,l) gamma_{k+l} / gamma_k` for
/// `1 <= n <= n_max`, `0 <= k <= k_max`. Moments are rescaled by the
/// declared norm bound when it exceeds one, so the test always runs on a
/// contraction.
pub fn agler_sums_1d(w: &WeightSequence1D, n_max: u64, k_max: u64) -> Certificate {
    agler_sums_1d_with(Exec::default(), w, n_max, k_max)
}

pub fn agler_sums_1d_with(exec: Exec, w: &WeightSequence1D, n_max: u64, k_max: u64) -> Certificate {
    let scale = if *w.norm_bound() > Rational::one() {
        w.norm_bound().clone()
    } else {
        Rational::one()
    };
    let len = (n_max + k_max + 1) as usize;
    let mut scaled = Vec::with_capacity(len);
    let mut factor = Rational::one();
    for gamma in w.moment_prefix(len) {
        scaled.push(gamma / &factor);
        factor *= &scale;
    }
    let per_n = exec::map_range(exec, 1..n_max + 1, |n| {
        let row: Vec<BigInt> = (0..=n).map(|l| binomial(n, l)).collect();
        (0..=k_max).find_map(|k| {
            let mut sum = Rational::zero();
            for (l, c) in row.iter().enumerate() {
                let term = Rational::from_integer(c.clone()) * &scaled[k as usize + l];
                if l % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            let sum = sum / &scaled[k as usize];
            sum.is_negative().then_some((n, k, sum))
        })
    });
    let base = |verdict_pass: bool| {
        let cert = if verdict_pass {
            Certificate::pass("agler_sums")
        } else {
            Certificate::fail("agler_sums")
        };
        cert.with_value("sequence", w.name())
            .with_value("n_max", n_max)
            .with_value("k_max", k_max)
            .with_value("scale", format_rational(&scale))
    };
    match per_n.into_iter().flatten().next() {
        None => base(true),
        Some((n, k, sum)) => base(false).with_witness(
            format!("n={n}, k={k}"),
            [
                ("n", n.to_string()),
                ("k", k.to_string()),
                ("sum", format_rational(&sum)),
            ],
        ),
    }
}

/// One-variable subnormal backward extension: `shift(alpha_0, W)` with `W`
/// subnormal with Berger measure `xi` is subnormal iff `1/s` is
/// `xi`-integrable and `alpha_0^2 <= ||1/s||^{-1}`.
pub fn backward_extension_1d(alpha0_sq: &Rational, xi: &AtomicMeasure1D) -> Certificate {
    let check = "backward_extension_1d";
    let norm = match xi.reciprocal_norm() {
        ReciprocalNorm::Infinite => {
            return Certificate::fail(check)
                .with_value("alpha0_sq", format_rational(alpha0_sq))
                .with_value("reciprocal_norm", ReciprocalNorm::Infinite)
                .with_witness("atom at 0", [("reciprocal_norm", "inf")]);
        }
        ReciprocalNorm::Finite(norm) => norm,
    };
    let bound = Rational::one() / &norm;
    let margin = &bound - alpha0_sq;
    let cert = Certificate::new(check, Verdict::from_bool(!margin.is_negative()))
        .with_value("alpha0_sq", format_rational(alpha0_sq))
        .with_value("reciprocal_norm", format_rational(&norm))
        .with_value("bound", format_rational(&bound))
        .with_value("margin", format_rational(&margin));
    if cert.passed() {
        cert
    } else {
        cert.with_witness(
            "alpha0_sq exceeds 1/||1/s||",
            [
                ("alpha0_sq", format_rational(alpha0_sq)),
                ("bound", format_rational(&bound)),
            ],
        )
    }
}
