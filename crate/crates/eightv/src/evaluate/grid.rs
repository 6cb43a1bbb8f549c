//! Signature grids for Holant(≠₂ | 𝓕): every edge carries a disequality.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::numeric::Scalar;
use crate::signatures::{EightVertexSig, Signature};

use super::EvalError;

/// A (vertex, port) pair; both indices are 0-based.
pub type Endpoint = (usize, usize);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridVertex {
    pub sig: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridJson", into = "GridJson")]
pub struct Grid {
    pub signatures: BTreeMap<String, Signature>,
    pub vertices: Vec<GridVertex>,
    pub edges: Vec<(Endpoint, Endpoint)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum SigSpec {
    Eight { eightvertex: String },
    Table { arity: usize, values: Vec<Scalar> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GridJson {
    signatures: BTreeMap<String, SigSpec>,
    vertices: Vec<GridVertex>,
    edges: Vec<(Endpoint, Endpoint)>,
}

impl TryFrom<GridJson> for Grid {
    type Error = EvalError;

    fn try_from(j: GridJson) -> Result<Self, EvalError> {
        let mut signatures = BTreeMap::new();
        for (name, spec) in j.signatures {
            let sig = match spec {
                SigSpec::Eight { eightvertex } => eightvertex.parse::<EightVertexSig>()?.to_signature(),
                SigSpec::Table { arity, values } => Signature::new(arity, values)?,
            };
            signatures.insert(name, sig);
        }
        let grid = Grid { signatures, vertices: j.vertices, edges: j.edges };
        grid.validate()?;
        Ok(grid)
    }
}

impl From<Grid> for GridJson {
    fn from(g: Grid) -> Self {
        GridJson {
            signatures: g
                .signatures
                .into_iter()
                .map(|(k, s)| (k, SigSpec::Table { arity: s.arity, values: s.values }))
                .collect(),
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

impl Grid {
    pub fn new() -> Self {
        Grid { signatures: BTreeMap::new(), vertices: Vec::new(), edges: Vec::new() }
    }

    pub fn add_signature(&mut self, name: &str, sig: Signature) {
        self.signatures.insert(name.to_string(), sig);
    }

    pub fn add_vertex(&mut self, sig: &str) -> usize {
        self.vertices.push(GridVertex { sig: sig.to_string() });
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, a: Endpoint, b: Endpoint) {
        self.edges.push((a, b));
    }

    pub fn from_json(text: &str) -> Result<Self, EvalError> {
        serde_json::from_str(text).map_err(|e| EvalError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("grid serializes")
    }

    pub fn signature_of(&self, v: usize) -> Result<&Signature, EvalError> {
        let name = &self.vertices.get(v).ok_or(EvalError::BadVertex(v))?.sig;
        self.signatures.get(name).ok_or_else(|| EvalError::UnknownSignature(name.clone()))
    }

    pub fn arities(&self) -> Result<Vec<usize>, EvalError> {
        (0..self.vertices.len()).map(|v| Ok(self.signature_of(v)?.arity)).collect()
    }

    /// Every port of every vertex is used by exactly one edge endpoint.
    pub fn validate(&self) -> Result<(), EvalError> {
        let arities = self.arities()?;
        let mut used: Vec<Vec<bool>> = arities.iter().map(|&n| vec![false; n]).collect();
        for &(a, b) in &self.edges {
            for (v, p) in [a, b] {
                let slot = used
                    .get_mut(v)
                    .ok_or(EvalError::BadVertex(v))?
                    .get_mut(p)
                    .ok_or(EvalError::DanglingPort { vertex: v, port: p })?;
                if *slot {
                    return Err(EvalError::PortReused { vertex: v, port: p });
                }
                *slot = true;
            }
        }
        for (v, ports) in used.iter().enumerate() {
            if let Some(p) = ports.iter().position(|u| !u) {
                return Err(EvalError::DanglingPort { vertex: v, port: p });
            }
        }
        Ok(())
    }

    /// The same grid with every vertex using `sig` replaced by `replacement`.
    pub fn with_signature(&self, name: &str, replacement: Signature) -> Grid {
        let mut g = self.clone();
        g.signatures.insert(name.to_string(), replacement);
        g
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::new()
    }
}
