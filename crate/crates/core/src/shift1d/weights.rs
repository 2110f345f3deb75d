use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, Zero};

use super::ShiftError;
use crate::measures::AtomicMeasure1D;
use crate::numerics::{format_rational, Rational};

/// `rule(n, values[..n])`; the prefix lets products build incrementally.
type Rule = Arc<dyn Fn(u64, &[Rational]) -> Rational + Send + Sync>;

/// Memoized prefix of a total function `n -> value`. Population is
/// idempotent, so concurrent readers may race to fill it.
#[derive(Clone)]
struct Memo {
    rule: Rule,
    values: Arc<RwLock<Vec<Rational>>>,
}

impl Memo {
    fn new(rule: Rule) -> Self {
        Memo {
            rule,
            values: Arc::new(RwLock::new(Vec::new())),
        }
    }

    fn get(&self, n: u64) -> Rational {
        let idx = n as usize;
        if let Some(v) = self.values.read().expect("memo lock").get(idx) {
            return v.clone();
        }
        let mut values = self.values.write().expect("memo lock");
        while values.len() <= idx {
            let next = (self.rule)(values.len() as u64, &values);
            values.push(next);
        }
        values[idx].clone()
    }
}

/// Squared weights `w_n^2` of a unilateral weighted shift.
///
/// `norm_bound` is the declared bound on `sup w_n^2 = ||W||^2`.
#[derive(Clone)]
pub struct WeightSequence1D {
    name: String,
    norm_bound: Rational,
    squared: Memo,
    moments: Memo,
}

impl fmt::Debug for WeightSequence1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSequence1D")
            .field("name", &self.name)
            .field("norm_bound", &format_rational(&self.norm_bound))
            .finish_non_exhaustive()
    }
}

impl WeightSequence1D {
    /// `rule(n)` must be strictly positive and at most `norm_bound` for all `n`.
    pub fn from_rule(
        name: impl Into<String>,
        norm_bound: Rational,
        rule: impl Fn(u64) -> Rational + Send + Sync + 'static,
    ) -> Self {
        let rule: Rule = Arc::new(move |n, _| {
            let w = rule(n);
            assert!(w.is_positive(), "squared weight {n} must be positive, got {w}");
            w
        });
        let squared = Memo::new(rule);
        let sq = squared.clone();
        let moments = Memo::new(Arc::new(move |n, prev: &[Rational]| match prev.last() {
            None => Rational::one(),
            Some(last) => last * sq.get(n - 1),
        }));
        WeightSequence1D {
            name: name.into(),
            norm_bound,
            squared,
            moments,
        }
    }

    pub fn constant(value: Rational) -> Self {
        let v = value.clone();
        Self::from_rule(format!("constant {}", format_rational(&value)), value, move |_| v.clone())
    }

    /// Explicit prefix followed by a constant tail.
    pub fn from_prefix(prefix: Vec<Rational>, tail: Rational) -> Self {
        let bound = prefix.iter().chain([&tail]).max().expect("nonempty").clone();
        let name = format!(
            "prefix [{}] then {}",
            prefix.iter().map(format_rational).collect::<Vec<_>>().join(", "),
            format_rational(&tail)
        );
        Self::from_rule(name, bound, move |n| {
            prefix.get(n as usize).cloned().unwrap_or_else(|| tail.clone())
        })
    }

    /// Weights `gamma_{n+1} / gamma_n` of a probability measure; the norm
    /// bound is the largest atom.
    pub fn from_measure(xi: &AtomicMeasure1D) -> Result<Self, ShiftError> {
        if !xi.is_probability() {
            return Err(ShiftError::NotProbability(format_rational(&xi.total_mass())));
        }
        let bound = xi.max_point().cloned().unwrap_or_else(Rational::zero);
        if bound.is_zero() {
            return Err(ShiftError::ZeroMoment(1));
        }
        let xi = xi.clone();
        Ok(Self::from_rule("measure", bound, move |n| {
            xi.moment(n + 1) / xi.moment(n)
        }))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn norm_bound(&self) -> &Rational {
        &self.norm_bound
    }

    pub fn squared_weight(&self, n: u64) -> Rational {
        self.squared.get(n)
    }

    /// `gamma_n = w_0^2 ... w_{n-1}^2`, `gamma_0 = 1`.
    pub fn moment(&self, n: u64) -> Rational {
        self.moments.get(n)
    }

    pub fn squared_prefix(&self, len: usize) -> Vec<Rational> {
        (0..len as u64).map(|n| self.squared_weight(n)).collect()
    }

    pub fn moment_prefix(&self, len: usize) -> Vec<Rational> {
        (0..len as u64).map(|n| self.moment(n)).collect()
    }

    /// The shift restricted past its first `i` basis vectors.
    pub fn restrict(&self, i: u64) -> Self {
        let inner = self.clone();
        Self::from_rule(
            format!("{} restricted by {i}", self.name),
            self.norm_bound.clone(),
            move |n| inner.squared_weight(n + i),
        )
    }
}

/// Lazily evaluated moments with `gamma_0 = 1`.
#[derive(Clone)]
pub struct MomentSequence {
    memo: Memo,
}

impl MomentSequence {
    pub fn from_rule(rule: impl Fn(u64) -> Rational + Send + Sync + 'static) -> Self {
        MomentSequence {
            memo: Memo::new(Arc::new(move |n, _| if n == 0 { Rational::one() } else { rule(n) })),
        }
    }

    pub fn from_weights(w: &WeightSequence1D) -> Self {
        let w = w.clone();
        Self::from_rule(move |n| w.moment(n))
    }

    pub fn from_measure(xi: &AtomicMeasure1D) -> Self {
        let xi = xi.clone();
        Self::from_rule(move |n| xi.moment(n))
    }

    pub fn get(&self, n: u64) -> Rational {
        self.memo.get(n)
    }

    pub fn prefix(&self, len: usize) -> Vec<Rational> {
        (0..len as u64).map(|n| self.get(n)).collect()
    }
}

/// `gamma_n` of the weight sequence.
pub fn moments_from_weights(w: &WeightSequence1D, n: u64) -> Rational {
    w.moment(n)
}

/// Squared weight `gamma_{n+1}(xi) / gamma_n(xi)`.
pub fn weights_from_measure(xi: &AtomicMeasure1D, n: u64) -> Result<Rational, ShiftError> {
    let gamma = xi.moment(n);
    if gamma.is_zero() {
        return Err(ShiftError::ZeroMoment(n));
    }
    Ok(xi.moment(n + 1) / gamma)
}

pub fn restrict(w: &WeightSequence1D, i: u64) -> WeightSequence1D {
    w.restrict(i)
}
