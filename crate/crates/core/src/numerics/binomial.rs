//! Binomial kernels and the two binomial identities used by the Agler sums.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{pow, Rational};
use super::NumericsError;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

/// Row `n` of Pascal's triangle, built additively so it is independent of
/// [`binomial`].
pub fn pascal_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for pair in row.windows(2) {
            next.push(&pair[0] + &pair[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

/// Checks `sum_k C(n,k)^2 == C(2n,n)` exactly.
pub fn chu_vandermonde_check(n: u64) -> bool {
    let squares: BigInt = pascal_row(n).iter().map(|c| c * c).sum();
    squares == central_binomial(n)
}

/// `sum_{l=1..n} (-1)^l C(n,l) c^l`, evaluated term by term.
pub fn alternating_binomial_sum(c: &Rational, n: u64) -> Result<Rational, NumericsError> {
    if !c.is_positive() || *c >= Rational::one() {
        return Err(NumericsError::Domain(format!(
            "alternating binomial sum needs 0 < c < 1, got {c}"
        )));
    }
    let mut total = Rational::zero();
    let mut power = Rational::one();
    for l in 1..=n {
        power *= c;
        let term = Rational::from_integer(binomial(n, l)) * &power;
        if l % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}

/// Closed form `(1 - c)^n - 1` of [`alternating_binomial_sum`].
pub fn alternating_binomial_closed(c: &Rational, n: u64) -> Rational {
    pow(&(Rational::one() - c), n) - Rational::one()
}
