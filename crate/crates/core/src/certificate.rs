//! Structured verdicts returned by every decision procedure.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Where a check failed, together with the exact values that show it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub location: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

/// Verdict of a named check. Values are stored as strings so exact
/// rationals survive serialization unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<Certificate>,
}

impl Certificate {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        Certificate {
            check: check.into(),
            verdict,
            values: BTreeMap::new(),
            witness: None,
            steps: Vec::new(),
        }
    }

    pub fn pass(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass)
    }

    pub fn fail(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Fail)
    }

    /// Verdict is the conjunction of the steps.
    pub fn all_of(check: impl Into<String>, steps: Vec<Certificate>) -> Self {
        let verdict = Verdict::from_bool(steps.iter().all(Certificate::passed));
        Certificate {
            steps,
            ..Self::new(check, verdict)
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn with_value(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.values.insert(key.into(), value.to_string());
        self
    }

    pub fn with_witness<K, V>(
        mut self,
        location: impl Into<String>,
        values: impl IntoIterator<Item = (K, V)>,
    ) -> Self
    where
        K: Into<String>,
        V: Display,
    {
        self.witness = Some(Witness {
            location: location.into(),
            values: values
                .into_iter()
                .map(|(k, v)| (k.into(), v.to_string()))
                .collect(),
        });
        self
    }

    pub fn with_step(mut self, step: Certificate) -> Self {
        self.steps.push(step);
        self
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Depth-first search for the first failing leaf.
    pub fn first_failure(&self) -> Option<&Certificate> {
        if self.passed() {
            return None;
        }
        self.steps
            .iter()
            .find_map(Certificate::first_failure)
            .or(Some(self))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}
