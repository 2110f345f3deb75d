//! Exact symmetric matrices and a positive-semidefiniteness oracle.
//!
//! The decision runs symmetric Bareiss elimination on the integer matrix
//! obtained by clearing denominators. After `k` positive pivots every
//! remaining entry equals the last pivot times the corresponding Schur
//! complement entry, so signs can be read off without any division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::certificate::Certificate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricMatrix {
    order: usize,
    // lower triangle, row-major
    entries: Vec<Rational>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        SymmetricMatrix {
            order,
            entries: vec![Rational::zero(); order * (order + 1) / 2],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds the matrix from the lower triangle of `f`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in 0..=i {
                entries.push(f(i, j));
            }
        }
        SymmetricMatrix { order, entries }
    }

    /// Hankel matrix `[seq(i + j + shift)]` of the given order.
    pub fn hankel(order: usize, shift: usize, mut seq: impl FnMut(usize) -> Rational) -> Self {
        Self::from_fn(order, |i, j| seq(i + j + shift))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn index(i: usize, j: usize) -> usize {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        r * (r + 1) / 2 + c
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.order && j < self.order, "index out of range");
        &self.entries[Self::index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.order && j < self.order, "index out of range");
        self.entries[Self::index(i, j)] = value;
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        assert_eq!(v.len(), self.order);
        let mut total = Rational::zero();
        for i in 0..self.order {
            for j in 0..self.order {
                total += &v[i] * self.get(i, j) * &v[j];
            }
        }
        total
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| super::rational::to_f64(self.get(i, j)))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdOutcome {
    /// Positive semidefinite. `pivots` are the Bareiss pivots of the
    /// denominator-cleared matrix in elimination order; `rank` is their count.
    Psd {
        pivots: Vec<BigInt>,
        pivot_order: Vec<usize>,
        rank: usize,
    },
    /// `witness^T M witness = value < 0`.
    Indefinite {
        witness: Vec<Rational>,
        value: Rational,
    },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd { .. })
    }
}

/// Exact PSD decision with a positivity or negativity witness.
pub fn psd_decision(m: &SymmetricMatrix) -> PsdOutcome {
    let n = m.order();
    let scale = m
        .entries
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = m.get(i, j);
                    e.numer() * (&scale / e.denom())
                })
                .collect()
        })
        .collect();

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivot_order = Vec::new();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();

    loop {
        if remaining.is_empty() {
            break;
        }
        if let Some(&i) = remaining.iter().find(|&&i| a[i][i].is_negative()) {
            let y: Vec<(usize, Rational)> = vec![(i, Rational::one())];
            return indefinite(m, &pivot_order, &remaining, &y);
        }
        if let Some(pos) = remaining.iter().position(|&i| a[i][i].is_positive()) {
            let p = remaining.remove(pos);
            let piv = a[p][p].clone();
            for &r in &remaining {
                for &s in &remaining {
                    if s > r {
                        continue;
                    }
                    let updated = (&piv * &a[r][s] - &a[r][p] * &a[p][s]) / &prev;
                    a[s][r] = updated.clone();
                    a[r][s] = updated;
                }
            }
            prev = piv.clone();
            pivots.push(piv);
            pivot_order.push(p);
            continue;
        }
        // all remaining diagonals vanish
        let mut offending = None;
        'search: for &r in &remaining {
            for &s in &remaining {
                if r != s && !a[r][s].is_zero() {
                    offending = Some((r, s));
                    break 'search;
                }
            }
        }
        match offending {
            None => break,
            Some((r, s)) => {
                // Schur entries are a / prev; with S_rr = 0,
                // t = -(S_ss + 1) / (2 S_rs) makes the form equal -1.
                let s_rs = Rational::new(a[r][s].clone(), prev.clone());
                let s_ss = Rational::new(a[s][s].clone(), prev.clone());
                let t = -(s_ss + Rational::one()) / (Rational::from_integer(2.into()) * s_rs);
                let y = vec![(r, t), (s, Rational::one())];
                return indefinite(m, &pivot_order, &remaining, &y);
            }
        }
    }

    PsdOutcome::Psd {
        rank: pivots.len(),
        pivots,
        pivot_order,
    }
}

/// Lifts a Schur-complement direction `y` to a full witness by minimizing
/// over the pivot coordinates.
fn indefinite(
    m: &SymmetricMatrix,
    pivot_order: &[usize],
    remaining: &[usize],
    y: &[(usize, Rational)],
) -> PsdOutcome {
    let n = m.order();
    let mut v = vec![Rational::zero(); n];
    for (i, val) in y {
        v[*i] = val.clone();
    }
    if !pivot_order.is_empty() {
        let block: Vec<Vec<Rational>> = pivot_order
            .iter()
            .map(|&p| pivot_order.iter().map(|&q| m.get(p, q).clone()).collect())
            .collect();
        let rhs: Vec<Rational> = pivot_order
            .iter()
            .map(|&p| {
                -remaining
                    .iter()
                    .map(|&r| m.get(p, r) * &v[r])
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect();
        let solved = solve_linear(block, rhs).expect("positive pivots give a nonsingular block");
        for (&p, val) in pivot_order.iter().zip(solved) {
            v[p] = val;
        }
    }
    let value = m.quadratic_form(&v);
    debug_assert!(value.is_negative());
    PsdOutcome::Indefinite { witness: v, value }
}

/// Exact PSD decision wrapped in a [`Certificate`].
pub fn is_psd(m: &SymmetricMatrix) -> Certificate {
    match psd_decision(m) {
        PsdOutcome::Psd {
            pivots,
            pivot_order,
            rank,
        } => Certificate::pass("psd")
            .with_value("order", m.order())
            .with_value("rank", rank)
            .with_value("pivot_order", format!("{pivot_order:?}"))
            .with_value(
                "pivots",
                pivots
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        PsdOutcome::Indefinite { witness, value } => Certificate::fail("psd")
            .with_value("order", m.order())
            .with_witness(
                "vector v with v^T M v < 0",
                [
                    (
                        "v",
                        witness
                            .iter()
                            .map(format_rational)
                            .collect::<Vec<_>>()
                            .join(","),
                    ),
                    ("vTMv", format_rational(&value)),
                ],
            ),
    }
}

/// Solves `a x = b` exactly by Gaussian elimination with pivot search.
/// Returns `None` when `a` is singular.
pub fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            let (top, bottom) = a.split_at_mut(r);
            for (target, pivot) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *target -= &factor * pivot;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in (r + 1)..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}
