//! JSON state files.
//!
//! A density matrix is `{"dim": d, "re": [[..], ..], "im": [[..], ..]}`, a pure
//! state is `{"dim": d, "re": [..], "im": [..]}`. Either may carry an optional
//! `"id"` string. A file holds one such object or an array of them.
//!
//! Parsing happens in two stages so callers can tell a malformed file
//! ([`parse_records`]) from a well-formed file describing an invalid state
//! ([`StateRecord::to_state`]).

use serde::{Deserialize, Serialize};

use super::{DensityMatrix, PureState};
use crate::linalg::ComplexMatrix;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Components {
    Matrix(Vec<Vec<f64>>),
    Vector(Vec<f64>),
}

/// One state as it appears on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub dim: usize,
    pub re: Components,
    pub im: Components,
}

#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Density(DensityMatrix),
    Pure(PureState),
}

impl State {
    pub fn dim(&self) -> usize {
        match self {
            State::Density(rho) => rho.dim(),
            State::Pure(psi) => psi.dim(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            State::Density(rho) => rho.clone(),
            State::Pure(psi) => psi.projector(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateEntry {
    pub id: String,
    pub state: State,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileContents {
    Many(Vec<StateRecord>),
    One(StateRecord),
}

/// Parses a state file into records, checking only shapes.
pub fn parse_records(text: &str) -> Result<Vec<StateRecord>> {
    let contents: FileContents =
        serde_json::from_str(text).map_err(|e| Error::StateFormat(e.to_string()))?;
    let records = match contents {
        FileContents::Many(v) => v,
        FileContents::One(r) => vec![r],
    };
    for (i, r) in records.iter().enumerate() {
        r.check_shape()
            .map_err(|msg| Error::StateFormat(format!("record {i}: {msg}")))?;
    }
    Ok(records)
}

/// Parses and validates every state in a file.
pub fn parse_states(text: &str) -> Result<Vec<StateEntry>> {
    parse_records(text)?
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.to_state(i))
        .collect()
}

impl StateRecord {
    fn check_shape(&self) -> std::result::Result<(), String> {
        let d = self.dim;
        if d == 0 {
            return Err("dim must be positive".into());
        }
        match (&self.re, &self.im) {
            (Components::Matrix(re), Components::Matrix(im)) => {
                let ok =
                    re.len() == d && im.len() == d && re.iter().chain(im).all(|row| row.len() == d);
                ok.then_some(())
                    .ok_or_else(|| format!("re/im must be {d}x{d} matrices"))
            }
            (Components::Vector(re), Components::Vector(im)) => (re.len() == d && im.len() == d)
                .then_some(())
                .ok_or_else(|| format!("re/im must have {d} entries")),
            _ => Err("re and im must both be matrices or both be vectors".into()),
        }
    }

    /// Validates the record as a quantum state; `index` names unnamed records.
    pub fn to_state(&self, index: usize) -> Result<StateEntry> {
        self.check_shape().map_err(Error::StateFormat)?;
        let state = match (&self.re, &self.im) {
            (Components::Matrix(re), Components::Matrix(im)) => {
                State::Density(DensityMatrix::new(ComplexMatrix::from_parts(re, im)?)?)
            }
            (Components::Vector(re), Components::Vector(im)) => State::Pure(PureState::new(
                re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect(),
            )?),
            _ => unreachable!("shape checked"),
        };
        Ok(StateEntry {
            id: self.id.clone().unwrap_or_else(|| format!("state{index}")),
            state,
        })
    }

    pub fn from_density(rho: &DensityMatrix, id: Option<String>) -> Self {
        let d = rho.dim();
        let m = rho.matrix();
        Self {
            id,
            dim: d,
            re: Components::Matrix(
                (0..d)
                    .map(|i| (0..d).map(|j| m.get(i, j).re).collect())
                    .collect(),
            ),
            im: Components::Matrix(
                (0..d)
                    .map(|i| (0..d).map(|j| m.get(i, j).im).collect())
                    .collect(),
            ),
        }
    }

    pub fn from_pure(psi: &PureState, id: Option<String>) -> Self {
        Self {
            id,
            dim: psi.dim(),
            re: Components::Vector(psi.amplitudes().iter().map(|z| z.re).collect()),
            im: Components::Vector(psi.amplitudes().iter().map(|z| z.im).collect()),
        }
    }
}

/// Serializes records as a JSON array.
pub fn to_json(records: &[StateRecord]) -> String {
    serde_json::to_string_pretty(records).expect("state records serialize")
}
