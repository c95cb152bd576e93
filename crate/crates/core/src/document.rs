//! JSON documents for cascades and matrices.
//!
//! A cascade document looks like
//! `{"version": "1", "gain": "2", "steps": [{"m": 0, "s": {"lo": 0, "c": ["1/2"]}}], "base": "identity"}`.
//! Scalars are strings in the `p/q+r/s*w2` grammar so values stay exact.
//! Bases and matrix inputs may be a named constant (`identity`, `haar`,
//! `lazy-causal`) or a `[[p, p], [p, p]]` array of polynomials.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lifting::{Cascade, LiftingStep};
use crate::polyphase::PolyMatrix;
use crate::scalar::Scalar;

pub const VERSION: &str = "1";

const NAMED_BASES: [&str; 3] = ["identity", "haar", "lazy-causal"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Named(String),
    Matrix(PolyMatrix),
}

impl MatrixSpec {
    pub fn resolve(&self) -> Result<PolyMatrix> {
        match self {
            MatrixSpec::Named(name) => PolyMatrix::named(name).ok_or_else(|| Error::Parse(format!("unknown named matrix {name:?}"))),
            MatrixSpec::Matrix(m) => Ok(m.clone()),
        }
    }

    /// Uses a name when the matrix equals one of the named constants.
    pub fn from_matrix(m: &PolyMatrix) -> Self {
        NAMED_BASES
            .iter()
            .find(|n| PolyMatrix::named(n).as_ref() == Some(m))
            .map(|n| MatrixSpec::Named(n.to_string()))
            .unwrap_or_else(|| MatrixSpec::Matrix(m.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CascadeDocument {
    pub version: String,
    pub gain: Scalar,
    pub steps: Vec<LiftingStep>,
    pub base: MatrixSpec,
}

impl CascadeDocument {
    pub fn from_cascade(c: &Cascade) -> Self {
        CascadeDocument {
            version: VERSION.to_string(),
            gain: c.gain.value().clone(),
            steps: c.steps.clone(),
            base: MatrixSpec::from_matrix(&c.base),
        }
    }

    pub fn to_cascade(&self) -> Result<Cascade> {
        if self.version != VERSION {
            return Err(Error::Parse(format!("unsupported document version {:?}", self.version)));
        }
        Cascade::new(self.gain.clone(), self.steps.clone(), self.base.resolve()?)
            .map_err(|_| Error::Parse("gain must be nonzero".into()))
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_cascade(text: &str) -> Result<Cascade> {
    parse_json::<CascadeDocument>(text)?.to_cascade()
}

pub fn cascade_to_json(c: &Cascade) -> String {
    serde_json::to_string_pretty(&CascadeDocument::from_cascade(c)).expect("documents serialize")
}

/// Accepts a matrix document, a named matrix, or a cascade document (whose product is taken).
pub fn parse_matrix(text: &str) -> Result<PolyMatrix> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Input {
        Spec(MatrixSpec),
        Cascade(CascadeDocument),
    }
    match parse_json::<Input>(text)? {
        Input::Spec(spec) => spec.resolve(),
        Input::Cascade(doc) => Ok(doc.to_cascade()?.product()),
    }
}

pub fn matrix_to_json(m: &PolyMatrix) -> String {
    serde_json::to_string(m).expect("matrices serialize")
}
