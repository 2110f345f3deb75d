//! JSON measure files:
//! `{"dim": 1|2, "atoms": [{"point": "1/4" | ["1/4","1/4"], "mass": "2/11"}, ...]}`.

use serde::{Deserialize, Serialize};

use super::{AtomicMeasure1D, AtomicMeasure2D, MeasureError};
use crate::numerics::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measure {
    One(AtomicMeasure1D),
    Two(AtomicMeasure2D),
}

impl Measure {
    pub fn dim(&self) -> u8 {
        match self {
            Measure::One(_) => 1,
            Measure::Two(_) => 2,
        }
    }

    pub fn into_1d(self) -> Result<AtomicMeasure1D, MeasureError> {
        match self {
            Measure::One(m) => Ok(m),
            Measure::Two(_) => Err(MeasureError::WrongDimension { expected: 1, found: 2 }),
        }
    }

    pub fn into_2d(self) -> Result<AtomicMeasure2D, MeasureError> {
        match self {
            Measure::Two(m) => Ok(m),
            Measure::One(_) => Err(MeasureError::WrongDimension { expected: 2, found: 1 }),
        }
    }

    pub fn to_json(&self) -> String {
        let atoms = match self {
            Measure::One(m) => m
                .atoms()
                .iter()
                .map(|(p, w)| AtomEntry {
                    point: PointEntry::Scalar(format_rational(p)),
                    mass: format_rational(w),
                })
                .collect(),
            Measure::Two(m) => m
                .atoms()
                .iter()
                .map(|((s, t), w)| AtomEntry {
                    point: PointEntry::Pair([format_rational(s), format_rational(t)]),
                    mass: format_rational(w),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&MeasureFile { dim: self.dim(), atoms })
            .expect("measure serializes")
    }
}

impl From<AtomicMeasure1D> for Measure {
    fn from(m: AtomicMeasure1D) -> Self {
        Measure::One(m)
    }
}

impl From<AtomicMeasure2D> for Measure {
    fn from(m: AtomicMeasure2D) -> Self {
        Measure::Two(m)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    dim: u8,
    atoms: Vec<AtomEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomEntry {
    point: PointEntry,
    mass: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointEntry {
    Scalar(String),
    Pair([String; 2]),
}

pub fn parse_measure_json(text: &str) -> Result<Measure, MeasureError> {
    let file: MeasureFile =
        serde_json::from_str(text).map_err(|e| MeasureError::Format(e.to_string()))?;
    let parse = |idx: usize, s: &str| -> Result<Rational, MeasureError> {
        parse_rational(s).map_err(|e| MeasureError::Format(format!("atom {idx}: {e}")))
    };
    match file.dim {
        1 => {
            let mut atoms = Vec::with_capacity(file.atoms.len());
            for (idx, a) in file.atoms.iter().enumerate() {
                let PointEntry::Scalar(p) = &a.point else {
                    return Err(MeasureError::Format(format!(
                        "atom {idx}: dim 1 expects a scalar point"
                    )));
                };
                atoms.push((parse(idx, p)?, parse(idx, &a.mass)?));
            }
            AtomicMeasure1D::new(atoms).map(Measure::One)
        }
        2 => {
            let mut atoms = Vec::with_capacity(file.atoms.len());
            for (idx, a) in file.atoms.iter().enumerate() {
                let PointEntry::Pair([s, t]) = &a.point else {
                    return Err(MeasureError::Format(format!(
                        "atom {idx}: dim 2 expects a [s, t] point"
                    )));
                };
                atoms.push(((parse(idx, s)?, parse(idx, t)?), parse(idx, &a.mass)?));
            }
            AtomicMeasure2D::new(atoms).map(Measure::Two)
        }
        other => Err(MeasureError::Format(format!("dim must be 1 or 2, got {other}"))),
    }
}
