//! The full report for one value of `x`: subnormality of each operator,
//! of the pair, and Agler positivity of the sum.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::agler::{certify_sum_with, AglerCertificate};
use crate::exec::Exec;
use crate::lubin::{self, LubinError, LubinFamily};
use crate::numerics::{format_rational, Rational};
use crate::Verdict;

#[derive(Clone, Debug, Serialize)]
pub struct Thresholds {
    pub t1: String,
    pub t2: String,
    pub pair: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub t1: Verdict,
    pub t2: Verdict,
    pub pair: Verdict,
    pub sum: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct LubinReport {
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub x: Rational,
    pub thresholds: Thresholds,
    pub verdicts: Verdicts,
    pub sum: AglerCertificate,
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub certified_x_max: Rational,
    #[serde(with = "crate::numerics::rational::serde_str")]
    pub epsilon: Rational,
    /// Atoms of the Berger measure of the pair, present iff the pair is subnormal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub berger_measure: Option<BTreeMap<String, String>>,
    /// Set when the pair fails while the sum passes.
    pub counterexample: bool,
}

impl LubinReport {
    pub fn all_pass(&self) -> bool {
        let v = &self.verdicts;
        [v.t1, v.t2, v.pair, v.sum].iter().all(|v| v.is_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `check,verdict` rows.
    pub fn to_csv(&self) -> String {
        let v = &self.verdicts;
        format!(
            "x,check,threshold,verdict\n{x},t1,all,{}\n{x},t2,{},{}\n{x},pair,{},{}\n{x},sum,{},{}\n",
            v.t1,
            self.thresholds.t2,
            v.t2,
            self.thresholds.pair,
            v.pair,
            format_rational(&self.certified_x_max),
            v.sum,
            x = format_rational(&self.x),
        )
    }
}

pub fn lubin_report(x: &Rational) -> Result<LubinReport, LubinError> {
    lubin_report_with(Exec::default(), x)
}

pub fn lubin_report_with(exec: Exec, x: &Rational) -> Result<LubinReport, LubinError> {
    let family = LubinFamily::new(x.clone())?;
    let sum = certify_sum_with(exec, x);
    let verdicts = Verdicts {
        t1: Verdict::from_bool(lubin::is_t1_subnormal(x)),
        t2: Verdict::from_bool(lubin::is_t2_subnormal(x)),
        pair: Verdict::from_bool(lubin::is_pair_subnormal(x)),
        sum: sum.verdict,
    };
    let berger_measure = family.berger_measure().map(|mu| {
        mu.atoms()
            .iter()
            .map(|((s, t), m)| {
                (
                    format!("({},{})", format_rational(s), format_rational(t)),
                    format_rational(m),
                )
            })
            .collect()
    });
    Ok(LubinReport {
        x: x.clone(),
        thresholds: Thresholds {
            t1: "all".into(),
            t2: format_rational(&lubin::threshold_t2()),
            pair: format_rational(&lubin::threshold_pair()),
        },
        counterexample: !verdicts.pair.is_pass() && verdicts.sum.is_pass(),
        verdicts,
        certified_x_max: sum.certified_x_max.clone(),
        epsilon: sum.epsilon.clone(),
        sum,
        berger_measure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn report_lines() {
        let r = lubin_report_with(Exec::Sequential, &rat(2, 11)).unwrap();
        assert!(r.all_pass());
        assert!(!r.counterexample);
        assert_eq!(r.thresholds.t2, "8/33");
        assert_eq!(r.thresholds.pair, "2/11");
        assert!(r.berger_measure.is_some());

        let r = lubin_report(&rat(1, 5)).unwrap();
        assert_eq!(r.verdicts.t2, Verdict::Pass);
        assert_eq!(r.verdicts.pair, Verdict::Fail);
        assert_eq!(r.verdicts.sum, Verdict::Pass);
        assert!(r.counterexample);
        assert!(r.to_csv().contains("1/5,pair,2/11,fail"));

        let r = lubin_report(&rat(1, 4)).unwrap();
        assert_eq!(r.verdicts.t2, Verdict::Fail);
        assert!(lubin_report(&rat(0, 1)).is_err());
    }
}
