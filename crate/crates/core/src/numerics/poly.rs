//! Exact rational roots of rational polynomials via the rational root theorem.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

const TRIAL_LIMIT: u64 = 1_000_000;

/// Evaluates `sum coeffs[i] x^i` by Horner's rule.
pub fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Distinct rational roots of `sum coeffs[i] x^i`, in increasing order.
///
/// Candidate numerators and denominators come from the divisors of the
/// trailing and leading integer coefficients. Factors above one million
/// that survive trial division are treated as prime, so a root whose
/// numerator or denominator needs such a cofactor split can be missed.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = coeffs.to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = BTreeSet::new();
    let lowest = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
    if lowest > 0 {
        roots.insert(Rational::zero());
        coeffs.drain(..lowest);
    }
    if coeffs.len() > 1 {
        let ints = clear_denominators(&coeffs);
        let lead = ints.last().expect("degree >= 1").abs();
        let trail = ints[0].abs();
        let nums = divisors(&trail);
        let dens = divisors(&lead);
        for p in &nums {
            for q in &dens {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let cand = Rational::new(p * sign, q.clone());
                    if eval(&coeffs, &cand).is_zero() {
                        roots.insert(cand);
                    }
                }
            }
        }
    }
    roots.into_iter().collect()
}

fn clear_denominators(coeffs: &[Rational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut rest = n.abs();
    let mut factors = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT && rest > BigInt::one() {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    factors
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut power = BigInt::one();
            for _ in 0..=e {
                next.push(d * &power);
                power *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
