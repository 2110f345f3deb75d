//! Certified range of `x` for which every `P_n(k,0)` is nonnegative.
//!
//! For `n` at or beyond the tail index both `I_n(1/16) >= (15/16)^n` and
//! `I_n(1/8) >= (7/8)^n` hold, so `A_n, B_n > 0` for every `x` and
//! only `k = 0` constrains `x`, through `x <= 6/5`. Below the tail index
//! each `n` gets an exact maximal admissible `x`.
//!
//! Tail index: on `[1/3, 1/2]`, `4s - s^2 < 2`, so the arcsine law gives
//! that interval mass at least `1 / (6 pi sqrt 2) > 1/27` (using
//! `pi < 22/7`, `sqrt 2 < 99/70`). Hence
//! `I_n(1/16) / (15/16)^n > (31/30)^n / 27` and
//! `I_n(1/8) / (7/8)^n > (15/14)^n / 27`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::integral::IntegralMoments;
use super::sums::Coefficients;
use crate::exec::{self, Exec};
use crate::numerics::{format_rational, inv_pow2, pow, rat, Rational};

pub const PI_UPPER: (i64, i64) = (22, 7);
pub const SQRT2_UPPER: (i64, i64) = (99, 70);
pub const TAIL_CONSTANT: i64 = 27;

/// Cap on `x` coming from `k = 0` once `A_n, B_n >= 0`.
pub fn k0_cap() -> Rational {
    rat(6, 5)
}

/// Explicit tail index and the facts it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailBound {
    /// Smallest `n` with `(31/30)^n >= 27`.
    pub n16: u64,
    /// Smallest `n` with `(15/14)^n >= 27`.
    pub n8: u64,
    pub n_tail: u64,
    /// `6 * 22/7 * 99/70`, an upper bound for `6 pi sqrt 2`.
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub six_pi_sqrt2_upper: Rational,
    /// First `n` from which `I_n(1/16) >= (15/16)^n` holds through `n_tail`.
    pub onset16: u64,
    /// First `n` from which `I_n(1/8) >= (7/8)^n` holds through `n_tail`.
    pub onset8: u64,
}

fn first_power_at_least(base: &Rational, target: &Rational) -> u64 {
    let mut n = 0;
    let mut v = Rational::one();
    while v < *target {
        v *= base;
        n += 1;
    }
    n
}

impl TailBound {
    pub fn derive() -> Self {
        let six_pi_sqrt2_upper =
            rat(6, 1) * rat(PI_UPPER.0, PI_UPPER.1) * rat(SQRT2_UPPER.0, SQRT2_UPPER.1);
        assert!(six_pi_sqrt2_upper < rat(TAIL_CONSTANT, 1));
        let target = rat(TAIL_CONSTANT, 1);
        let n16 = first_power_at_least(&rat(31, 30), &target);
        let n8 = first_power_at_least(&rat(15, 14), &target);
        let n_tail = n16.max(n8);
        let moments16 = IntegralMoments::new(rat(1, 16));
        let moments8 = IntegralMoments::new(rat(1, 8));
        let onset = |m: &IntegralMoments, base: Rational| {
            (0..=n_tail)
                .rev()
                .take_while(|&n| m.get(n) >= pow(&base, n))
                .last()
                .unwrap_or(n_tail + 1)
        };
        let onset16 = onset(&moments16, rat(15, 16));
        let onset8 = onset(&moments8, rat(7, 8));
        TailBound {
            n16,
            n8,
            n_tail,
            six_pi_sqrt2_upper,
            onset16,
            onset8,
        }
    }

    /// The analytic bound is sharper than needed: the exact inequalities
    /// must already hold at the tail index.
    pub fn consistent(&self) -> bool {
        self.onset16 <= self.n_tail && self.onset8 <= self.n_tail
    }
}

/// Exact decision of `P_n(k,0) >= 0` for all `k >= 0` at fixed `x` and `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub n: u64,
    pub pass: bool,
    /// Smallest failing `k` and the value of `P_n(k,0) gamma_k(xi_a)` there.
    pub witness: Option<(u64, Rational)>,
}

pub fn positivity_over_all_k(x: &Rational, n: u64) -> Positivity {
    decide(&Coefficients::new(n), x)
}

fn decide(c: &Coefficients, x: &Rational) -> Positivity {
    let fail = |k, v| Positivity {
        n: c.n,
        pass: false,
        witness: Some((k, v)),
    };
    let at0 = c.scaled(x, 0);
    if at0.is_negative() {
        return fail(0, at0);
    }
    let (a, b, cn) = (c.a(x), c.b(x), c.c());
    if !a.is_negative() && !b.is_negative() {
        return Positivity {
            n: c.n,
            pass: true,
            witness: None,
        };
    }
    let mut k = 1;
    loop {
        let (q4, q2) = (inv_pow2(2 * k), inv_pow2(k));
        let v = &a * &q4 + &b * &q2 + &cn;
        if v.is_negative() {
            return fail(k, v);
        }
        if a.abs() * q4 + b.abs() * q2 < cn {
            return Positivity {
                n: c.n,
                pass: true,
                witness: None,
            };
        }
        k += 1;
    }
}

/// Largest `x` with `P_n(k,0) >= 0` for all `k`, or `None` if unbounded.
pub fn x_max_for_n(n: u64) -> Option<Rational> {
    x_max(&Coefficients::new(n))
}

fn x_max(c: &Coefficients) -> Option<Rational> {
    fn improve(best: &mut Option<Rational>, cand: Rational) {
        if best.as_ref().is_none_or(|b| cand < *b) {
            *best = Some(cand);
        }
    }
    let mut best: Option<Rational> = None;
    let (z0, z1) = c.k0_parts();
    if z1.is_negative() {
        improve(&mut best, z0 / -z1);
    }
    let (a0, a1) = c.a_parts();
    let (b0, b1) = c.b_parts();
    let cn = c.c();
    if !a1.is_negative() && !b1.is_negative() {
        return best;
    }
    // k-th value is lo_k + x sl_k with lo_k >= cn > 0, and
    // |sl_k| <= |a1| 4^-k + |b1| 2^-k, so lo_k / -sl_k only grows past the
    // point where cn / (|a1| 4^-k + |b1| 2^-k) exceeds the current best.
    let mut k = 1;
    loop {
        let (q4, q2) = (inv_pow2(2 * k), inv_pow2(k));
        let lo = &a0 * &q4 + &b0 * &q2 + &cn;
        let sl = &a1 * &q4 + &b1 * &q2;
        if sl.is_negative() {
            improve(&mut best, lo / -&sl);
        }
        let envelope = a1.abs() * &q4 + b1.abs() * &q2;
        if envelope.is_zero() {
            break;
        }
        let floor = &cn / envelope;
        // with a1 < 0 <= b1 the slope changes sign once, so a nonnegative
        // slope means every later one is nonnegative too
        let done = match &best {
            Some(b) => floor >= *b,
            None => !b1.is_negative() && !sl.is_negative(),
        };
        if done {
            break;
        }
        k += 1;
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerN {
    pub n: u64,
    /// `None` means every `x` passes at this `n`.
    #[serde(with = "crate::numerics::rational::serde_opt_str")]
    pub x_max: Option<Rational>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AglerCertificate {
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub x: Rational,
    pub verdict: crate::Verdict,
    pub n_tail: u64,
    pub per_n: Vec<PerN>,
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub certified_x_max: Rational,
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub epsilon: Rational,
    pub tail: TailBound,
    /// First failing `(n, k)` when the verdict is fail.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(u64, u64)>,
}

impl AglerCertificate {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Flattened into the generic certificate shape.
    pub fn certificate(&self) -> crate::Certificate {
        let cert = crate::Certificate::new("sum_subnormality", self.verdict)
            .with_value("x", format_rational(&self.x))
            .with_value("n_tail", self.n_tail)
            .with_value("certified_x_max", format_rational(&self.certified_x_max))
            .with_value("epsilon", format_rational(&self.epsilon));
        match self.witness {
            Some((n, k)) => cert.with_witness(
                format!("n={n}, k={k}"),
                [("n", n.to_string()), ("k", k.to_string())],
            ),
            None if !self.passed() => cert.with_witness(
                "k=0 tail cap",
                [("cap", format_rational(&k0_cap()))],
            ),
            None => cert,
        }
    }
}

fn all_coefficients(exec: Exec, n_tail: u64) -> Vec<Coefficients> {
    let m16 = IntegralMoments::new(rat(1, 16));
    let m8 = IntegralMoments::new(rat(1, 8));
    // warm the caches sequentially, then fan out
    m16.get(n_tail);
    m8.get(n_tail);
    exec::map_range(exec, 1..n_tail + 1, |n| {
        Coefficients::from_integrals(n, m16.get(n), m8.get(n))
    })
}

/// `(certified_x_max, per-n bounds, tail)`.
pub fn certified_x_max_with(exec: Exec) -> (Rational, Vec<Option<Rational>>, TailBound) {
    let tail = TailBound::derive();
    let coeffs = all_coefficients(exec, tail.n_tail);
    let bounds = exec::map(exec, &coeffs, x_max);
    let cert = bounds.iter().flatten().fold(k0_cap(), |acc, b| acc.min(b.clone()));
    (cert, bounds, tail)
}

pub fn certified_x_max() -> Rational {
    certified_x_max_with(Exec::default()).0
}

/// `certified_x_max - 2/11`.
pub fn certified_epsilon() -> Rational {
    certified_epsilon_with(Exec::default())
}

pub fn certified_epsilon_with(exec: Exec) -> Rational {
    certified_x_max_with(exec).0 - rat(2, 11)
}

pub fn certify_sum(x: &Rational) -> AglerCertificate {
    certify_sum_with(Exec::default(), x)
}

pub fn certify_sum_with(exec: Exec, x: &Rational) -> AglerCertificate {
    let tail = TailBound::derive();
    let coeffs = all_coefficients(exec, tail.n_tail);
    let rows = exec::map(exec, &coeffs, |c| (x_max(c), decide(c, x)));
    let certified = rows
        .iter()
        .filter_map(|(b, _)| b.clone())
        .fold(k0_cap(), |acc, b| acc.min(b));
    let per_n: Vec<PerN> = rows
        .into_iter()
        .map(|(x_max, d)| PerN {
            n: d.n,
            x_max,
            pass: d.pass,
            witness_k: d.witness.map(|(k, _)| k),
        })
        .collect();
    let witness = per_n
        .iter()
        .find(|p| !p.pass)
        .map(|p| (p.n, p.witness_k.expect("failures carry k")));
    let pass = witness.is_none() && *x <= k0_cap() && x.is_positive() && tail.consistent();
    AglerCertificate {
        x: x.clone(),
        verdict: crate::Verdict::from_bool(pass),
        n_tail: tail.n_tail,
        per_n,
        epsilon: &certified - rat(2, 11),
        certified_x_max: certified,
        tail,
        witness,
    }
}

/// `x,n,k,P_n` rows with `P_n` as an exact rational, for `x` stepping from
/// `x_min` to `x_max` inclusive.
pub fn sweep_csv(
    exec: Exec,
    x_min: &Rational,
    x_max: &Rational,
    x_step: &Rational,
    n_max: u64,
    k_max: u64,
) -> String {
    let mut xs = Vec::new();
    let mut x = x_min.clone();
    while x <= *x_max {
        xs.push(x.clone());
        x += x_step;
    }
    let coeffs = all_coefficients(exec, n_max);
    let blocks = exec::map(exec, &xs, |x| {
        let mut out = String::new();
        for c in &coeffs {
            for k in 0..=k_max {
                let v = c.scaled(x, k) / crate::lubin::gamma_a(k);
                out.push_str(&format!(
                    "{},{},{k},{}\n",
                    format_rational(x),
                    c.n,
                    format_rational(&v)
                ));
            }
        }
        out
    });
    let mut csv = String::from("x,n,k,P_n\n");
    for b in blocks {
        csv.push_str(&b);
    }
    csv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::int;

    #[test]
    fn tail_index() {
        let t = TailBound::derive();
        assert_eq!(t.six_pi_sqrt2_upper, rat(13068, 490));
        assert!(pow(&rat(31, 30), t.n16) >= int(27) && pow(&rat(31, 30), t.n16 - 1) < int(27));
        assert!(pow(&rat(15, 14), t.n8) >= int(27) && pow(&rat(15, 14), t.n8 - 1) < int(27));
        assert_eq!((t.n16, t.n8, t.n_tail), (101, 48, 101));
        assert!(t.consistent());
        assert!(t.onset8 < t.onset16);
    }

    #[test]
    fn tail_inequalities_hold_far_out() {
        let t = TailBound::derive();
        let m16 = IntegralMoments::new(rat(1, 16));
        let m8 = IntegralMoments::new(rat(1, 8));
        for n in t.onset16.max(t.onset8)..=300 {
            assert!(m16.get(n) >= pow(&rat(15, 16), n), "n={n}");
            assert!(m8.get(n) >= pow(&rat(7, 8), n), "n={n}");
        }
    }

    #[test]
    fn decision_matches_bound() {
        for n in [1, 2, 4, 9, 20] {
            let bound = x_max_for_n(n).unwrap();
            assert!(positivity_over_all_k(&bound, n).pass, "n={n}");
            let above = &bound + rat(1, 1_000_000_000);
            let d = positivity_over_all_k(&above, n);
            assert!(!d.pass, "n={n}");
            let (k, v) = d.witness.unwrap();
            assert!(v.is_negative());
            let p = super::super::p_n_closed(&above, k, n);
            assert!(p.is_negative());
        }
    }

    #[test]
    fn boundary_and_large_x() {
        for n in 1..=200 {
            assert!(positivity_over_all_k(&rat(2, 11), n).pass, "n={n}");
        }
        let d = positivity_over_all_k(&int(10), 1);
        assert!(!d.pass);
        assert!(d.witness.is_some());
    }

    #[test]
    fn epsilon_is_positive_and_certified() {
        let (x_cert, bounds, tail) = certified_x_max_with(Exec::Sequential);
        assert_eq!(bounds.len() as u64, tail.n_tail);
        for b in bounds.iter().flatten() {
            assert!(*b > rat(2, 11));
        }
        let eps = &x_cert - rat(2, 11);
        assert!(eps.is_positive());
        assert_eq!(certified_epsilon_with(Exec::Parallel), eps);
        assert!(certify_sum(&x_cert).passed());
        assert!(certify_sum(&(rat(2, 11) + &eps / int(2))).passed());
        assert!(!certify_sum(&(&x_cert + rat(1, 1_000_000))).passed());
        let one = certify_sum(&int(1));
        assert!(!one.passed());
        assert!(one.witness.is_some());
    }

    #[test]
    fn sweep_shape() {
        let csv = sweep_csv(Exec::Sequential, &rat(2, 11), &rat(2, 11), &rat(1, 10), 3, 1);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,n,k,P_n");
        assert_eq!(lines.len(), 1 + 3 * 2);
        assert!(lines[1].starts_with("2/11,1,0,"));
        let empty = sweep_csv(Exec::Sequential, &int(1), &int(0), &rat(1, 10), 3, 1);
        assert_eq!(empty, "x,n,k,P_n\n");
    }
}
