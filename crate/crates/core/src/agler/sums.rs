//! Agler sums `P_n(k, 0)` of `S = (T_1 + T_2) / 2` at the basis vectors
//! `e_(k,0)`:
//! `P_n(k,0) = sum_l (-1)^l C(n,l) ||S^l e_(k,0)||^2 / ||e_(k,0)||^2`.

use num_traits::{One, Zero};

use super::integral::integral_moment;
use crate::lubin::{gamma_a, moment2d};
use crate::numerics::{binomial, inv_pow2, pow, rat, Rational};

/// For `k >= 1`, `P_n(k,0) gamma_k(xi_a) = A_n 4^-k + B_n 2^-k + C_n`, and
/// `P_n(0,0) = (3/4 - 5x/8) + A_n + B_n + (1/44 + 5x/8)(3/4)^n`.
///
/// Each of `A_n`, `B_n` and the `k = 0` value is affine in `x`; the fields
/// keep the constant and linear parts apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    pub n: u64,
    /// `(15/16)^n`
    pub p: Rational,
    /// `(7/8)^n`
    pub q: Rational,
    /// `(3/4)^n`
    pub r: Rational,
    /// `I_n(1/16)`
    pub i16: Rational,
    /// `I_n(1/8)`
    pub i8: Rational,
}

impl Coefficients {
    pub fn new(n: u64) -> Self {
        Self::from_integrals(n, integral_moment(&rat(1, 16), n), integral_moment(&rat(1, 8), n))
    }

    pub fn from_integrals(n: u64, i16: Rational, i8: Rational) -> Self {
        Coefficients {
            n,
            p: pow(&rat(15, 16), n),
            q: pow(&rat(7, 8), n),
            r: pow(&rat(3, 4), n),
            i16,
            i8,
        }
    }

    /// `A_n = a0 + x a1`.
    pub fn a_parts(&self) -> (Rational, Rational) {
        (rat(2, 11) * &self.p, &self.i16 - &self.p)
    }

    /// `B_n = b0 + x b1`.
    pub fn b_parts(&self) -> (Rational, Rational) {
        (rat(1, 22) * &self.q, (&self.i8 - &self.q) / rat(4, 1))
    }

    pub fn c(&self) -> Rational {
        rat(1, 44) * &self.r
    }

    pub fn a(&self, x: &Rational) -> Rational {
        let (a0, a1) = self.a_parts();
        a0 + a1 * x
    }

    pub fn b(&self, x: &Rational) -> Rational {
        let (b0, b1) = self.b_parts();
        b0 + b1 * x
    }

    /// `P_n(0,0) = z0 + x z1`.
    pub fn k0_parts(&self) -> (Rational, Rational) {
        let (a0, a1) = self.a_parts();
        let (b0, b1) = self.b_parts();
        let z0 = rat(3, 4) + a0 + b0 + rat(1, 44) * &self.r;
        let z1 = rat(-5, 8) + a1 + b1 + rat(5, 8) * &self.r;
        (z0, z1)
    }

    /// `P_n(k,0) gamma_k(xi_a)` for `k >= 1`, `P_n(0,0)` for `k = 0`.
    pub fn scaled(&self, x: &Rational, k: u64) -> Rational {
        if k == 0 {
            let (z0, z1) = self.k0_parts();
            return z0 + z1 * x;
        }
        self.a(x) * inv_pow2(2 * k) + self.b(x) * inv_pow2(k) + self.c()
    }
}

pub fn p_n_closed(x: &Rational, k: u64, n: u64) -> Rational {
    Coefficients::new(n).scaled(x, k) / gamma_a(k)
}

/// Direct expansion of `||S^l e_(k,0)||^2`: the vectors
/// `T_1^{l-i} T_2^i e_(k,0)` are orthogonal with squared norms
/// `gamma_(k+l-i, i) / gamma_(k,0)`.
pub fn p_n_bruteforce(x: &Rational, k: u64, n: u64) -> Rational {
    let base = moment2d(k, 0, x);
    let mut total = Rational::zero();
    let mut quarter = Rational::one();
    for l in 0..=n {
        let mut norm_sq = Rational::zero();
        for i in 0..=l {
            let c = binomial(l, i);
            norm_sq += Rational::from_integer(&c * &c) * moment2d(k + l - i, i, x);
        }
        let term = Rational::from_integer(binomial(n, l)) * &quarter * norm_sq / &base;
        if l % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        quarter /= rat(4, 1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::int;

    #[test]
    fn n1_by_hand() {
        // 1 - (gamma_(k+1,0) + gamma_(k,1)) / (4 gamma_(k,0))
        for x in [rat(1, 10), rat(2, 11), rat(7, 3)] {
            for k in 0..5 {
                let g = |a, b| moment2d(a, b, &x);
                let expected = int(1) - (g(k + 1, 0) + g(k, 1)) / (int(4) * g(k, 0));
                assert_eq!(p_n_closed(&x, k, 1), expected, "x={x} k={k}");
                assert_eq!(p_n_bruteforce(&x, k, 1), expected);
            }
        }
    }

    #[test]
    fn closed_equals_bruteforce() {
        for x in [rat(1, 10), rat(2, 11), rat(1, 4), rat(3, 1)] {
            for n in 1..=8 {
                for k in 0..=4 {
                    assert_eq!(p_n_closed(&x, k, n), p_n_bruteforce(&x, k, n), "x={x} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn first_n_constraints() {
        let c = Coefficients::new(1);
        let (a0, a1) = c.a_parts();
        let (b0, b1) = c.b_parts();
        assert_eq!(-a0 / a1, rat(30, 11));
        assert_eq!(-b0 / b1, rat(14, 11));
    }
}
