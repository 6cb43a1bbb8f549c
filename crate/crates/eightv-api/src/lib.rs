//! Wire types and the synchronous operations behind every endpoint.
//!
//! The server runs these on a blocking pool and the CLI calls them directly
//! when no server is given.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod ops;

pub use eightv::classify::{Certificate, Verdict};
pub use eightv::evaluate::{Grid, InterpolationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    /// Malformed or unusable input.
    Input,
    /// The instance exceeds a configured limit.
    Limit,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{message}")]
pub struct ApiError {
    pub kind: ErrorKind,
    pub message: String,
}

impl ApiError {
    pub fn input(message: impl Into<String>) -> Self {
        ApiError { kind: ErrorKind::Input, message: message.into() }
    }

    pub fn limit(message: impl Into<String>) -> Self {
        ApiError { kind: ErrorKind::Limit, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        ApiError { kind: ErrorKind::Internal, message: message.into() }
    }
}

impl From<eightv::evaluate::EvalError> for ApiError {
    fn from(e: eightv::evaluate::EvalError) -> Self {
        use eightv::evaluate::EvalError;
        match e {
            EvalError::TooManyEdges { .. } | EvalError::Overflow => ApiError::limit(e.to_string()),
            _ => ApiError::input(e.to_string()),
        }
    }
}

/// Built-in eight-vertex signatures for graph input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Eulerian orientations, (0,1,1,1,1,1,1,0).
    Eo,
    /// The medial-graph Tutte signature, (0,1,1,2,2,1,1,0).
    Tutte,
    /// (1,1,1,0,0,1,1,0), which the classifier finds tractable.
    SampleTractable,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Eo, Preset::Tutte, Preset::SampleTractable];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Eo => "eo",
            Preset::Tutte => "tutte",
            Preset::SampleTractable => "sample-tractable",
        }
    }

    pub fn entries(self) -> &'static str {
        match self {
            Preset::Eo => "0,1,1,1,1,1,1,0",
            Preset::Tutte => "0,1,1,2,2,1,1,0",
            Preset::SampleTractable => "1,1,1,0,0,1,1,0",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = ApiError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| ApiError::input(format!("unknown preset `{s}` (expected eo, tutte or sample-tractable)")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edges: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRequest {
    /// Entries "a,b,c,d,w,z,y,x".
    pub sig: String,
}

/// A grid, or a graph in the text format together with a signature.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct EvalRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sig: Option<String>,
    #[serde(default)]
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphRequest {
    pub graph: String,
    #[serde(default)]
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueResponse {
    /// Exact value, or "~re+imi" when the input had approximate entries.
    pub value: String,
    pub approx: String,
    pub edges: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsingRequest {
    /// Couplings (J_h, J_v, J, J′, J″). Rationals are read as multiples of
    /// πi/4; any entry with a "~" prefix switches all five to complex floats.
    pub couplings: [String; 5],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default)]
    pub limits: Limits,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsingResponse {
    pub sig: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueResponse>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckCertRequest {
    pub sig: String,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCertResponse {
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpRequest {
    /// Defaults to the built-in two-slot grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(default = "default_slot")]
    pub slot: String,
    pub lambda: String,
    #[serde(default = "default_t")]
    pub t: String,
    #[serde(default)]
    pub limits: Limits,
}

fn default_slot() -> String {
    "slot".into()
}

fn default_t() -> String {
    "2".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}
