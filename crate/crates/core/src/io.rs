//! JSON file formats for graphs, diagrams and presentation matrices.
//!
//! Graph file:
//! `{"genus": 1, "vertices": [0, 1], "edges": [{"id": 0, "tail": 0, "head": 1, "sign": 1, "connection": "x^1 y^-1"}]}`
//!
//! Diagram file:
//! `{"genus": 1, "regions": [{"id": 0, "shaded": true}], "arcs": [[0, 2]], "crossings": [{"a": 0, "b": 1, "sign": 1, "connection": "1"}]}`
//!
//! Writers emit pretty-printed JSON with a trailing newline and canonical
//! monomial strings, so equal values serialize to identical bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Crossing, DiagramError, DiagramSpec, Region, RegionId};
use crate::graph::{Edge, EdgeId, GraphError, Sign, SignedGraph, VertexId};
use crate::laplacian::LaplacianMatrix;
use crate::ring::{parse_monomial, Monomial, VariableSet};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("JSON syntax at line {line}, column {column}: {msg}")]
    Json {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}

fn field_err(field: impl Into<String>, msg: impl ToString) -> FormatError {
    FormatError::Field {
        field: field.into(),
        msg: msg.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: u32,
    pub tail: u32,
    pub head: u32,
    pub sign: i64,
    pub connection: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub genus: usize,
    pub vertices: Vec<u32>,
    pub edges: Vec<EdgeRecord>,
}

/// Canonical text for a connection: `1` for the identity, else `x^1 y^-1` style.
pub fn connection_string(vars: VariableSet, m: &Monomial) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        m.render(vars)
    }
}

fn parse_sign(field: String, v: i64) -> Result<Sign, FormatError> {
    Sign::from_i64(v).ok_or_else(|| field_err(field, format!("sign must be 1 or -1, got {v}")))
}

impl GraphFile {
    pub fn from_graph(g: &SignedGraph) -> Self {
        let vars = g.vars();
        GraphFile {
            genus: vars.genus(),
            vertices: g.vertices().iter().map(|v| v.0).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id.0,
                    tail: e.tail.0,
                    head: e.head.0,
                    sign: e.sign.value(),
                    connection: connection_string(vars, &e.connection),
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<SignedGraph, FormatError> {
        let vars = VariableSet::new(self.genus);
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Ok(Edge {
                    id: EdgeId(r.id),
                    tail: VertexId(r.tail),
                    head: VertexId(r.head),
                    sign: parse_sign(format!("edges[{i}].sign"), r.sign)?,
                    connection: parse_monomial(vars, &r.connection)
                        .map_err(|e| field_err(format!("edges[{i}].connection"), e))?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(SignedGraph::new(
            vars,
            self.vertices.iter().copied().map(VertexId).collect(),
            edges,
        )?)
    }
}

pub fn read_graph(text: &str) -> Result<SignedGraph, FormatError> {
    serde_json::from_str::<GraphFile>(text)?.to_graph()
}

pub fn write_graph(g: &SignedGraph) -> String {
    let mut s = serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionRecord {
    pub id: u32,
    pub shaded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingRecord {
    pub a: u32,
    pub b: u32,
    pub sign: i64,
    pub connection: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub genus: usize,
    pub regions: Vec<RegionRecord>,
    pub arcs: Vec<[u32; 2]>,
    pub crossings: Vec<CrossingRecord>,
}

impl DiagramFile {
    pub fn region_ids(&self) -> Vec<RegionId> {
        self.regions.iter().map(|r| RegionId(r.id)).collect()
    }

    pub fn arc_pairs(&self) -> Vec<(RegionId, RegionId)> {
        self.arcs
            .iter()
            .map(|[a, b]| (RegionId(*a), RegionId(*b)))
            .collect()
    }

    pub fn to_spec(&self) -> Result<DiagramSpec, FormatError> {
        let vars = VariableSet::new(self.genus);
        let regions = self
            .regions
            .iter()
            .map(|r| Region {
                id: RegionId(r.id),
                shaded: r.shaded,
            })
            .collect();
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| {
                Ok(Crossing {
                    a: RegionId(c.a),
                    b: RegionId(c.b),
                    sign: parse_sign(format!("crossings[{i}].sign"), c.sign)?,
                    connection: parse_monomial(vars, &c.connection)
                        .map_err(|e| field_err(format!("crossings[{i}].connection"), e))?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(DiagramSpec::new(
            vars,
            regions,
            self.arc_pairs(),
            crossings,
        )?)
    }

    pub fn from_spec(d: &DiagramSpec) -> Self {
        let vars = d.vars();
        DiagramFile {
            genus: vars.genus(),
            regions: d
                .regions()
                .iter()
                .map(|r| RegionRecord {
                    id: r.id.0,
                    shaded: r.shaded,
                })
                .collect(),
            arcs: d.arcs().iter().map(|(a, b)| [a.0, b.0]).collect(),
            crossings: d
                .crossings()
                .iter()
                .map(|c| CrossingRecord {
                    a: c.a.0,
                    b: c.b.0,
                    sign: c.sign.value(),
                    connection: connection_string(vars, &c.connection),
                })
                .collect(),
        }
    }
}

/// Parses the raw diagram file without validating it as a [`DiagramSpec`],
/// so colorability can be diagnosed on malformed diagrams.
pub fn read_diagram_file(text: &str) -> Result<DiagramFile, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_diagram(text: &str) -> Result<DiagramSpec, FormatError> {
    read_diagram_file(text)?.to_spec()
}

pub fn write_diagram(d: &DiagramSpec) -> String {
    let mut s =
        serde_json::to_string_pretty(&DiagramFile::from_spec(d)).expect("diagram serializes");
    s.push('\n');
    s
}

/// Row-major presentation matrix with canonical polynomial strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub genus: usize,
    pub vertices: Vec<u32>,
    pub rows: Vec<Vec<String>>,
}

impl PresentationFile {
    pub fn from_matrix(m: &LaplacianMatrix) -> Self {
        PresentationFile {
            genus: m.vars().genus(),
            vertices: m.vertices().iter().map(|v| v.0).collect(),
            rows: m
                .rows()
                .iter()
                .map(|r| r.iter().map(|p| p.canonical_string()).collect())
                .collect(),
        }
    }
}

pub fn write_presentation(m: &LaplacianMatrix) -> String {
    let mut s =
        serde_json::to_string_pretty(&PresentationFile::from_matrix(m)).expect("matrix serializes");
    s.push('\n');
    s
}
