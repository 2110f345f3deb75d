use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed};

use crate::measures::Axis;
use crate::numerics::{format_rational, Rational};

pub type Lattice = (u64, u64);

type Rule2 = Arc<dyn Fn(u64, u64) -> Rational + Send + Sync>;

#[derive(Clone)]
struct Cache2 {
    rule: Rule2,
    values: Arc<RwLock<HashMap<Lattice, Rational>>>,
}

impl Cache2 {
    fn new(rule: Rule2) -> Self {
        Cache2 {
            rule,
            values: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    fn get(&self, k1: u64, k2: u64) -> Rational {
        if let Some(v) = self.values.read().expect("cache lock").get(&(k1, k2)) {
            return v.clone();
        }
        let v = (self.rule)(k1, k2);
        self.values
            .write()
            .expect("cache lock")
            .entry((k1, k2))
            .or_insert(v)
            .clone()
    }
}

/// Lattice rectangle `0 <= k1 < width`, `0 <= k2 < height`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub width: u64,
    pub height: u64,
}

impl Window {
    pub fn new(width: u64, height: u64) -> Self {
        Window { width, height }
    }

    pub fn square(side: u64) -> Self {
        Window::new(side, side)
    }

    /// Row-major, `k2` outer.
    pub fn points(&self) -> Vec<Lattice> {
        (0..self.height)
            .flat_map(|k2| (0..self.width).map(move |k1| (k1, k2)))
            .collect()
    }

    pub fn contains(&self, (k1, k2): Lattice) -> bool {
        k1 < self.width && k2 < self.height
    }

    pub fn len(&self) -> usize {
        (self.width * self.height) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl FromStr for Window {
    type Err = String;

    /// `"8x8"` or `"12X6"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (w, h) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("window {s:?}: expected WxH"))?;
        let parse = |t: &str| -> Result<u64, String> {
            match t.trim().parse::<u64>() {
                Ok(0) | Err(_) => Err(format!("window {s:?}: {t:?} is not a positive integer")),
                Ok(v) => Ok(v),
            }
        };
        Ok(Window::new(parse(w)?, parse(h)?))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

/// Moments `gamma_k` of a two-variable shift, `gamma_(0,0) = 1`.
#[derive(Clone)]
pub struct MomentTable2D {
    cache: Cache2,
}

impl fmt::Debug for MomentTable2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MomentTable2D").finish_non_exhaustive()
    }
}

impl MomentTable2D {
    /// `rule` must be positive; `rule(0, 0)` is ignored and read as 1.
    pub fn from_rule(rule: impl Fn(u64, u64) -> Rational + Send + Sync + 'static) -> Self {
        MomentTable2D {
            cache: Cache2::new(Arc::new(move |k1, k2| {
                if (k1, k2) == (0, 0) {
                    return Rational::one();
                }
                let v = rule(k1, k2);
                assert!(v.is_positive(), "moment ({k1},{k2}) must be positive, got {v}");
                v
            })),
        }
    }

    pub fn get(&self, k1: u64, k2: u64) -> Rational {
        self.cache.get(k1, k2)
    }
}

/// Squared weights of a two-variable weighted shift: `alpha_k^2` for
/// `T_1 e_k = alpha_k e_{k+e1}` and `beta_k^2` for `T_2 e_k = beta_k e_{k+e2}`.
#[derive(Clone)]
pub struct WeightDiagram {
    alpha: Cache2,
    beta: Cache2,
}

impl fmt::Debug for WeightDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightDiagram").finish_non_exhaustive()
    }
}

impl WeightDiagram {
    pub fn from_rules(
        alpha_sq: impl Fn(u64, u64) -> Rational + Send + Sync + 'static,
        beta_sq: impl Fn(u64, u64) -> Rational + Send + Sync + 'static,
    ) -> Self {
        WeightDiagram {
            alpha: Cache2::new(Arc::new(alpha_sq)),
            beta: Cache2::new(Arc::new(beta_sq)),
        }
    }

    /// `alpha_(k1,k2)^2 = u(k1)`, `beta_(k1,k2)^2 = v(k2)`.
    pub fn tensor(
        u: impl Fn(u64) -> Rational + Send + Sync + 'static,
        v: impl Fn(u64) -> Rational + Send + Sync + 'static,
    ) -> Self {
        Self::from_rules(move |k1, _| u(k1), move |_, k2| v(k2))
    }

    pub fn alpha_sq(&self, k1: u64, k2: u64) -> Rational {
        self.alpha.get(k1, k2)
    }

    pub fn beta_sq(&self, k1: u64, k2: u64) -> Rational {
        self.beta.get(k1, k2)
    }

    pub fn weight_sq(&self, axis: Axis, k: Lattice) -> Rational {
        match axis {
            Axis::X => self.alpha_sq(k.0, k.1),
            Axis::Y => self.beta_sq(k.0, k.1),
        }
    }

    /// `gamma_k` along the path right along row 0, then up column `k1`.
    pub fn moment(&self, k1: u64, k2: u64) -> Rational {
        let mut gamma = Rational::one();
        for i in 0..k1 {
            gamma *= self.alpha_sq(i, 0);
        }
        for j in 0..k2 {
            gamma *= self.beta_sq(k1, j);
        }
        gamma
    }

    /// Product of squared weights along a monotone path given as a
    /// sequence of unit steps.
    pub fn moment_along(&self, steps: &[Axis]) -> Rational {
        let mut at = (0, 0);
        let mut gamma = Rational::one();
        for &axis in steps {
            gamma *= self.weight_sq(axis, at);
            match axis {
                Axis::X => at.0 += 1,
                Axis::Y => at.1 += 1,
            }
        }
        gamma
    }

    /// The shift restricted to the span of `e_k` with `k >= offset`.
    pub fn restrict(&self, offset: Lattice) -> Self {
        let (a, b) = (self.alpha.clone(), self.beta.clone());
        let (o1, o2) = offset;
        Self::from_rules(
            move |k1, k2| a.get(k1 + o1, k2 + o2),
            move |k1, k2| b.get(k1 + o1, k2 + o2),
        )
    }

    /// Copy with one squared weight replaced.
    pub fn with_override(&self, axis: Axis, at: Lattice, value: Rational) -> Self {
        let (a, b) = (self.alpha.clone(), self.beta.clone());
        let pick = move |cache: &Cache2, own: bool, k1: u64, k2: u64| {
            if own && (k1, k2) == at {
                value.clone()
            } else {
                cache.get(k1, k2)
            }
        };
        let pick_b = pick.clone();
        Self::from_rules(
            move |k1, k2| pick(&a, axis == Axis::X, k1, k2),
            move |k1, k2| pick_b(&b, axis == Axis::Y, k1, k2),
        )
    }

    /// `k1,k2,alpha_sq,beta_sq` rows over the window.
    pub fn to_csv(&self, window: Window) -> String {
        let mut out = String::from("k1,k2,alpha_sq,beta_sq\n");
        for (k1, k2) in window.points() {
            out.push_str(&format!(
                "{k1},{k2},{},{}\n",
                format_rational(&self.alpha_sq(k1, k2)),
                format_rational(&self.beta_sq(k1, k2))
            ));
        }
        out
    }
}

/// `alpha_k^2 = gamma_{k+e1} / gamma_k`, `beta_k^2 = gamma_{k+e2} / gamma_k`.
pub fn weights_from_moments2d(t: &MomentTable2D) -> WeightDiagram {
    let (a, b) = (t.clone(), t.clone());
    WeightDiagram::from_rules(
        move |k1, k2| a.get(k1 + 1, k2) / a.get(k1, k2),
        move |k1, k2| b.get(k1, k2 + 1) / b.get(k1, k2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    #[test]
    fn window_parsing() {
        assert_eq!("8x6".parse::<Window>().unwrap(), Window::new(8, 6));
        assert_eq!("3X3".parse::<Window>().unwrap(), Window::square(3));
        assert!("0x3".parse::<Window>().is_err());
        assert!("8".parse::<Window>().is_err());
        assert_eq!(Window::new(2, 3).points().len(), 6);
        assert_eq!(Window::new(4, 5).to_string(), "4x5");
    }

    #[test]
    fn constant_table_gives_unit_weights() {
        let d = weights_from_moments2d(&MomentTable2D::from_rule(|_, _| int(1)));
        for (k1, k2) in Window::square(4).points() {
            assert_eq!(d.alpha_sq(k1, k2), int(1));
            assert_eq!(d.beta_sq(k1, k2), int(1));
        }
    }

    #[test]
    fn staircase_recovers_table() {
        let t = MomentTable2D::from_rule(|k1, k2| {
            rat(1, 2).pow(k1 as i32) * rat(1, 3).pow(k2 as i32) + rat(1, 5).pow((k1 * k2) as i32)
        });
        let t = MomentTable2D::from_rule(move |k1, k2| t.get(k1, k2) / int(2));
        let d = weights_from_moments2d(&t);
        for (k1, k2) in Window::square(5).points().into_iter().skip(1) {
            assert_eq!(d.moment(k1, k2), t.get(k1, k2) / t.get(0, 0));
        }
    }

    #[test]
    fn restriction_and_override() {
        let d = WeightDiagram::from_rules(|k1, k2| rat(1 + k1 as i64, 2 + k2 as i64), |_, _| int(1));
        let r = d.restrict((2, 1));
        assert_eq!(r.alpha_sq(0, 0), rat(3, 3));
        let bad = d.with_override(Axis::Y, (1, 1), int(7));
        assert_eq!(bad.beta_sq(1, 1), int(7));
        assert_eq!(bad.beta_sq(1, 0), int(1));
        assert_eq!(bad.alpha_sq(1, 1), d.alpha_sq(1, 1));
        assert!(d.to_csv(Window::square(1)).ends_with("0,0,1/2,1\n"));
    }
}
