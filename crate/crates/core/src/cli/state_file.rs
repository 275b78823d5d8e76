//! JSON state files: `{"n": 2, "N": 3, "terms": [{"re": 1, "im": 0, "digits": [1, 1, 1]}]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::statespace::{BasisLabel, StateVector, SystemShape};

/// Input norms further than this from 1 produce a warning.
pub const NORM_WARNING: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    #[serde(rename = "N")]
    pub particles: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
    pub digits: Vec<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum StateFileError {
    #[error("malformed state file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedState {
    pub state: StateVector,
    pub input_norm: f64,
    pub warning: Option<String>,
}

pub fn parse_state_file(text: &str) -> Result<ParsedState, StateFileError> {
    let file: StateFile = serde_json::from_str(text)?;
    Ok(file.to_state()?)
}

impl StateFile {
    /// Sum the terms (duplicates add up) and normalize.
    pub fn to_state(&self) -> crate::Result<ParsedState> {
        let shape = SystemShape::new(self.particles, self.n)?;
        if self.terms.is_empty() {
            return Err(Error::InvalidArgument("state file has no terms".into()));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); shape.dim()];
        for term in &self.terms {
            if !term.re.is_finite() || !term.im.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite amplitude for digits {:?}", term.digits)));
            }
            let index = shape.index_of(&BasisLabel::from_one_based(&term.digits)?)?;
            amps[index] += Complex64::new(term.re, term.im);
        }
        let raw = StateVector::from_amplitudes(shape, amps)?;
        let input_norm = raw.norm();
        let state = raw
            .normalize()
            .map_err(|_| Error::DegenerateState("state file describes the zero vector".into()))?;
        let warning = ((input_norm - 1.0).abs() > NORM_WARNING)
            .then(|| format!("input norm {input_norm:.6} differs from 1; state was renormalized"));
        Ok(ParsedState { state, input_norm, warning })
    }
}
