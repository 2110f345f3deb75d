//! `I_n(c) = int_0^4 (1 - c s)^n dmu(s)` for the arcsine law
//! `dmu = ds / (pi sqrt(4s - s^2))`, whose moments are `C(2l, l)`.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::Rational;

/// Exact `I_n(c)`. With `c = p/q` the sum is
/// `q^-n sum_l (-1)^l C(n,l) C(2l,l) p^l q^(n-l)`, evaluated in integers.
pub fn integral_moment(c: &Rational, n: u64) -> Rational {
    let (p, q) = (c.numer(), c.denom());
    let mut q_pows = Vec::with_capacity(n as usize + 1);
    q_pows.push(BigInt::one());
    for l in 0..n as usize {
        let next = &q_pows[l] * q;
        q_pows.push(next);
    }
    let mut sum = BigInt::zero();
    let mut choose_n = BigInt::one(); // C(n, l)
    let mut central = BigInt::one(); // C(2l, l)
    let mut p_pow = BigInt::one();
    for l in 0..=n {
        let term = &choose_n * &central * &p_pow * &q_pows[(n - l) as usize];
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        choose_n = choose_n * (n - l) / (l + 1);
        central = central * (2 * (2 * l + 1)) / (l + 1);
        p_pow *= p;
    }
    Rational::new(sum, q_pows.pop().expect("q^n"))
}

/// Write-once cache of `I_n(c)` for a fixed `c`.
#[derive(Debug)]
pub struct IntegralMoments {
    c: Rational,
    values: RwLock<Vec<Rational>>,
}

impl IntegralMoments {
    pub fn new(c: Rational) -> Self {
        IntegralMoments {
            c,
            values: RwLock::new(Vec::new()),
        }
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn get(&self, n: u64) -> Rational {
        let idx = n as usize;
        if let Some(v) = self.values.read().expect("cache lock").get(idx) {
            return v.clone();
        }
        let mut values = self.values.write().expect("cache lock");
        while values.len() <= idx {
            let next = integral_moment(&self.c, values.len() as u64);
            values.push(next);
        }
        values[idx].clone()
    }
}
