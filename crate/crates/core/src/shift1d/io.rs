//! Weight specs as JSON and moment dumps as CSV.
//!
//! ```json
//! {"rule": "prefix", "prefix": ["2", "1/2"], "tail": "1/2"}
//! {"rule": "constant", "value": "1"}
//! {"rule": "measure", "measure": {"dim": 1, "atoms": [...]}}
//! {"rule": "lubin_b", "x": "1/5"}
//! ```

use serde::{Deserialize, Serialize};

use super::{ShiftError, WeightSequence1D};
use crate::lubin;
use crate::measures::parse_measure_json;
use crate::numerics::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    Constant { value: String },
    Prefix { prefix: Vec<String>, tail: String },
    Measure { measure: serde_json::Value },
    LubinA,
    LubinB { x: String },
    LubinC,
}

impl WeightSpec {
    pub fn from_json(text: &str) -> Result<Self, ShiftError> {
        serde_json::from_str(text).map_err(|e| ShiftError::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("weight spec serializes")
    }

    pub fn build(&self) -> Result<WeightSequence1D, ShiftError> {
        let parse = |what: &str, s: &str| {
            parse_rational(s).map_err(|e| ShiftError::Spec(format!("{what}: {e}")))
        };
        let positive = |what: &str, s: &str| -> Result<Rational, ShiftError> {
            let v = parse(what, s)?;
            if v <= Rational::from_integer(0.into()) {
                return Err(ShiftError::Spec(format!("{what}: {s} is not positive")));
            }
            Ok(v)
        };
        Ok(match self {
            WeightSpec::Constant { value } => WeightSequence1D::constant(positive("value", value)?),
            WeightSpec::Prefix { prefix, tail } => {
                let prefix = prefix
                    .iter()
                    .enumerate()
                    .map(|(i, s)| positive(&format!("prefix[{i}]"), s))
                    .collect::<Result<Vec<_>, _>>()?;
                WeightSequence1D::from_prefix(prefix, positive("tail", tail)?)
            }
            WeightSpec::Measure { measure } => {
                let xi = parse_measure_json(&measure.to_string())?.into_1d()?;
                WeightSequence1D::from_measure(&xi)?
            }
            WeightSpec::LubinA => lubin::weights_a(),
            WeightSpec::LubinB { x } => lubin::weights_b(&positive("x", x)?),
            WeightSpec::LubinC => lubin::weights_c(),
        })
    }
}

/// `n,gamma_n` rows for `0 <= n <= n_max`.
pub fn moments_csv(w: &WeightSequence1D, n_max: u64) -> String {
    let mut out = String::from("n,gamma_n\n");
    for n in 0..=n_max {
        out.push_str(&format!("{n},{}\n", format_rational(&w.moment(n))));
    }
    out
}

/// Inverse of [`moments_csv`]; rows must be consecutive from `n = 0`.
pub fn parse_moments_csv(text: &str) -> Result<Vec<Rational>, ShiftError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next().map(str::trim) {
        Some("n,gamma_n") => {}
        other => return Err(ShiftError::Spec(format!("bad header {other:?}"))),
    }
    let mut out = Vec::new();
    for (row, line) in lines.enumerate() {
        let bad = |why: String| ShiftError::Spec(format!("line {}: {why}", row + 2));
        let (n, gamma) = line.trim().split_once(',').ok_or_else(|| bad("expected n,gamma_n".into()))?;
        let n: usize = n.trim().parse().map_err(|_| bad(format!("bad index {n:?}")))?;
        if n != out.len() {
            return Err(bad(format!("expected index {}, got {n}", out.len())));
        }
        out.push(parse_rational(gamma.trim()).map_err(|e| bad(e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn prefix_spec_round_trip() {
        let spec = WeightSpec::from_json(r#"{"rule":"prefix","prefix":["2","1/2"],"tail":"1/2"}"#).unwrap();
        assert_eq!(WeightSpec::from_json(&spec.to_json()).unwrap(), spec);
        let w = spec.build().unwrap();
        assert_eq!(w.moment_prefix(4), vec![rat(1, 1), rat(2, 1), rat(1, 1), rat(1, 2)]);
    }

    #[test]
    fn measure_spec() {
        let text = r#"{"rule":"measure","measure":{"dim":1,"atoms":[
            {"point":"1/4","mass":"1/2"},{"point":"1/2","mass":"1/2"}]}}"#;
        let w = WeightSpec::from_json(text).unwrap().build().unwrap();
        assert_eq!(w.squared_weight(0), rat(3, 8));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(WeightSpec::from_json(r#"{"rule":"constant","value":"0"}"#).unwrap().build().is_err());
        assert!(WeightSpec::from_json(r#"{"rule":"spiral"}"#).is_err());
        assert!(WeightSpec::from_json(r#"{"rule":"constant","value":"1","extra":1}"#).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let w = WeightSequence1D::constant(rat(1, 2));
        let text = moments_csv(&w, 5);
        assert!(text.starts_with("n,gamma_n\n0,1\n1,1/2\n"));
        assert_eq!(parse_moments_csv(&text).unwrap(), w.moment_prefix(6));
        assert!(parse_moments_csv("n,gamma_n\n1,1\n").is_err());
        assert!(parse_moments_csv("n,gamma\n0,1\n").is_err());
    }
}
