//! Signed graphs whose edges carry a connection monomial.
//!
//! Each edge stores one direction (`tail -> head`) and the connection read in
//! that direction; reading it `head -> tail` gives the inverse. Loops and
//! parallel edges are allowed. All operations return new graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{Monomial, RingError, VariableSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub sign: Sign,
    /// Connection read in the `tail -> head` direction.
    pub connection: Monomial,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }

    /// The endpoint opposite `from`, with the connection read leaving `from`.
    /// For a loop this is the stored reading.
    pub fn read_from(&self, from: VertexId) -> Option<(VertexId, Monomial)> {
        if self.tail == from {
            Some((self.head, self.connection.clone()))
        } else if self.head == from {
            Some((self.tail, self.connection.inv()))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} has {1} exponents but the surface needs {2}")]
    ConnectionArity(EdgeId, usize, usize),
    #[error("edge {0} is a loop and cannot be contracted")]
    ContractLoop(EdgeId),
    #[error("vertex {0} already exists")]
    VertexExists(VertexId),
    #[error("edge {0} already exists")]
    EdgeExists(EdgeId),
    #[error("rg1: degree must be 1 at {vertex} (found {degree} edge ends, {loops} loops)")]
    Rg1Degree {
        vertex: VertexId,
        degree: usize,
        loops: usize,
    },
    #[error("rg2: no parallel pair with equal connection and opposite signs between {0} and {1}")]
    Rg2NoPair(VertexId, VertexId),
    #[error("rg3: {0}")]
    Rg3Pattern(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Whether a Reidemeister graph move inserts or removes its local configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveDirection {
    Add,
    Remove,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    vars: VariableSet,
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl SignedGraph {
    pub fn new(
        vars: VariableSet,
        vertices: Vec<VertexId>,
        edges: Vec<Edge>,
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let mut seen_edges = BTreeSet::new();
        for e in &edges {
            if !seen_edges.insert(e.id) {
                return Err(GraphError::DuplicateEdge(e.id));
            }
            for end in [e.tail, e.head] {
                if !seen.contains(&end) {
                    return Err(GraphError::UnknownVertex(end));
                }
            }
            if e.connection.num_vars() != vars.len() {
                return Err(GraphError::ConnectionArity(
                    e.id,
                    e.connection.num_vars(),
                    vars.len(),
                ));
            }
        }
        Ok(SignedGraph {
            vars,
            vertices,
            edges,
        })
    }

    pub fn empty(vars: VariableSet) -> Self {
        SignedGraph {
            vars,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// `n` isolated vertices with ids `0..n`.
    pub fn edgeless(vars: VariableSet, n: u32) -> Self {
        SignedGraph {
            vars,
            vertices: (0..n).map(VertexId).collect(),
            edges: Vec::new(),
        }
    }

    pub fn vars(&self) -> VariableSet {
        self.vars
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    fn require_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn next_vertex_id(&self) -> VertexId {
        VertexId(self.vertices.iter().map(|v| v.0 + 1).max().unwrap_or(0))
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.iter().map(|e| e.id.0 + 1).max().unwrap_or(0))
    }

    /// Number of edge ends at `v`, loops counted twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    /// Connected components as vertex lists, ordered by first appearance in
    /// the vertex list; each component keeps vertex-list order.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let index: BTreeMap<VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            let (a, b) = (index[&e.tail], index[&e.head]);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.vertices.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let c = comps.len();
            label[start] = c;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = c;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members);
        }
        comps
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.vertices[i]).collect())
            .collect()
    }

    /// The subgraph induced on `keep` (vertex order preserved).
    pub fn induced(&self, keep: &[VertexId]) -> SignedGraph {
        let set: BTreeSet<VertexId> = keep.iter().copied().collect();
        SignedGraph {
            vars: self.vars,
            vertices: self
                .vertices
                .iter()
                .copied()
                .filter(|v| set.contains(v))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| set.contains(&e.tail) && set.contains(&e.head))
                .cloned()
                .collect(),
        }
    }

    pub fn delete_edge(&self, id: EdgeId) -> Result<SignedGraph, GraphError> {
        let pos = self
            .edges
            .iter()
            .position(|e| e.id == id)
            .ok_or(GraphError::UnknownEdge(id))?;
        let mut out = self.clone();
        out.edges.remove(pos);
        Ok(out)
    }

    /// Gauge transformation at `v` by `u`: connections leaving `v` gain `u^-1`,
    /// connections entering `v` gain `u`. Loops at `v` are unchanged.
    pub fn gauge(&self, v: VertexId, u: &Monomial) -> Result<SignedGraph, GraphError> {
        self.require_vertex(v)?;
        let u_inv = u.checked_inv()?;
        let mut out = self.clone();
        for e in out.edges.iter_mut().filter(|e| !e.is_loop()) {
            if e.tail == v {
                e.connection = u_inv.checked_mul(&e.connection)?;
            } else if e.head == v {
                e.connection = e.connection.checked_mul(u)?;
            }
        }
        Ok(out)
    }

    /// Contracts the non-loop edge `id`: gauges its head so the edge's
    /// connection is trivial, deletes it, and merges the head into the tail.
    pub fn contract_edge(&self, id: EdgeId) -> Result<SignedGraph, GraphError> {
        let e = self.edge(id).ok_or(GraphError::UnknownEdge(id))?;
        if e.is_loop() {
            return Err(GraphError::ContractLoop(id));
        }
        let (keep, gone) = (e.tail, e.head);
        let gauged = self.gauge(gone, &e.connection.checked_inv()?)?;
        let mut out = gauged.delete_edge(id)?;
        out.vertices.retain(|&v| v != gone);
        for edge in &mut out.edges {
            if edge.tail == gone {
                edge.tail = keep;
            }
            if edge.head == gone {
                edge.head = keep;
            }
        }
        Ok(out)
    }

    /// Disjoint union; vertex and edge ids of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &SignedGraph) -> Result<SignedGraph, GraphError> {
        if self.vars != other.vars {
            return Err(RingError::VariableMismatch {
                left: self.vars.genus(),
                right: other.vars.genus(),
            }
            .into());
        }
        let voff = self.next_vertex_id().0;
        let eoff = self.next_edge_id().0;
        let mut out = self.clone();
        out.vertices
            .extend(other.vertices.iter().map(|v| VertexId(v.0 + voff)));
        out.edges.extend(other.edges.iter().map(|e| Edge {
            id: EdgeId(e.id.0 + eoff),
            tail: VertexId(e.tail.0 + voff),
            head: VertexId(e.head.0 + voff),
            sign: e.sign,
            connection: e.connection.clone(),
        }));
        Ok(out)
    }

    /// Connection of a closed walk given as `(edge, traversed tail->head?)` steps.
    pub fn walk_connection(&self, steps: &[(EdgeId, bool)]) -> Result<Monomial, GraphError> {
        let mut acc = Monomial::one(self.vars);
        for &(id, forward) in steps {
            let e = self.edge(id).ok_or(GraphError::UnknownEdge(id))?;
            let c = if forward {
                e.connection.clone()
            } else {
                e.connection.checked_inv()?
            };
            acc = acc.checked_mul(&c)?;
        }
        Ok(acc)
    }

    /// RG1, removal: deletes the pendant vertex `w` and its single edge.
    pub fn rg1_remove(&self, w: VertexId) -> Result<SignedGraph, GraphError> {
        self.require_vertex(w)?;
        let incident: Vec<&Edge> = self.edges.iter().filter(|e| e.touches(w)).collect();
        let loops = incident.iter().filter(|e| e.is_loop()).count();
        let degree = self.degree(w);
        if loops != 0 || incident.len() != 1 {
            return Err(GraphError::Rg1Degree {
                vertex: w,
                degree,
                loops,
            });
        }
        let id = incident[0].id;
        let mut out = self.delete_edge(id)?;
        out.vertices.retain(|&v| v != w);
        Ok(out)
    }

    /// RG1, insertion: attaches a new pendant vertex `w` to `anchor` by an
    /// edge `anchor -> w` with the given sign and connection.
    pub fn rg1_add(
        &self,
        anchor: VertexId,
        w: VertexId,
        edge: EdgeId,
        sign: Sign,
        connection: Monomial,
    ) -> Result<SignedGraph, GraphError> {
        self.require_vertex(anchor)?;
        if self.has_vertex(w) {
            return Err(GraphError::VertexExists(w));
        }
        self.fresh_edge(edge)?;
        self.check_arity(edge, &connection)?;
        let mut out = self.clone();
        out.vertices.push(w);
        out.edges.push(Edge {
            id: edge,
            tail: anchor,
            head: w,
            sign,
            connection,
        });
        Ok(out)
    }

    /// RG2, insertion: adds a `+1`/`-1` pair of parallel edges `u1 -> u2`
    /// with the same connection. `u1 == u2` gives a pair of loops.
    pub fn rg2_add(
        &self,
        u1: VertexId,
        u2: VertexId,
        ids: (EdgeId, EdgeId),
        connection: Monomial,
    ) -> Result<SignedGraph, GraphError> {
        self.require_vertex(u1)?;
        self.require_vertex(u2)?;
        self.fresh_edge(ids.0)?;
        self.fresh_edge(ids.1)?;
        if ids.0 == ids.1 {
            return Err(GraphError::EdgeExists(ids.1));
        }
        self.check_arity(ids.0, &connection)?;
        let mut out = self.clone();
        for (id, sign) in [(ids.0, Sign::Plus), (ids.1, Sign::Minus)] {
            out.edges.push(Edge {
                id,
                tail: u1,
                head: u2,
                sign,
                connection: connection.clone(),
            });
        }
        Ok(out)
    }

    /// RG2, removal: finds the first pair (in edge order) of edges between
    /// `u1` and `u2` with opposite signs and equal connection read `u1 -> u2`
    /// (for loops, equal up to inversion), and removes both.
    pub fn rg2_remove(&self, u1: VertexId, u2: VertexId) -> Result<SignedGraph, GraphError> {
        self.require_vertex(u1)?;
        self.require_vertex(u2)?;
        let candidates: Vec<(usize, Sign, Monomial)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| (e.tail == u1 && e.head == u2) || (e.tail == u2 && e.head == u1))
            .map(|(i, e)| {
                let c = if u1 == u2 {
                    e.connection.orient_positive()
                } else {
                    e.read_from(u1).expect("incident").1
                };
                (i, e.sign, c)
            })
            .collect();
        for (a, (i, si, ci)) in candidates.iter().enumerate() {
            if let Some((j, _, _)) = candidates[a + 1..]
                .iter()
                .find(|(_, sj, cj)| *sj != *si && cj == ci)
            {
                let mut out = self.clone();
                let (lo, hi) = if i < j { (*i, *j) } else { (*j, *i) };
                out.edges.remove(hi);
                out.edges.remove(lo);
                return Ok(out);
            }
        }
        Err(GraphError::Rg2NoPair(u1, u2))
    }

    /// RG3: replaces a degree-3 star at `v` (signs `+,-,-` or `-,+,+` on its
    /// edges to distinct neighbours `w1, w2, w3`, where `w1` carries the odd
    /// sign) by the triangle on `w1, w2, w3`.
    ///
    /// With `phi_i` the connection of `v -> w_i`, the triangle edges are
    /// `w1 -> w2` (`+`, `phi1^-1 phi2`), `w1 -> w3` (`+`, `phi1^-1 phi3`) and
    /// `w2 -> w3` (`-`, `phi2^-1 phi3`), all signs flipped in the mirrored case.
    /// `w2` and `w3` are ordered by edge order at `v`. New edge ids follow the
    /// largest existing id.
    pub fn rg3(&self, v: VertexId) -> Result<SignedGraph, GraphError> {
        self.require_vertex(v)?;
        let star: Vec<&Edge> = self.edges.iter().filter(|e| e.touches(v)).collect();
        if star.iter().any(|e| e.is_loop()) {
            return Err(GraphError::Rg3Pattern(format!("{v} has a loop")));
        }
        if star.len() != 3 {
            return Err(GraphError::Rg3Pattern(format!(
                "{v} has degree {}, need 3",
                star.len()
            )));
        }
        let arms: Vec<(VertexId, Sign, Monomial, EdgeId)> = star
            .iter()
            .map(|e| {
                let (w, phi) = e.read_from(v).expect("incident");
                (w, e.sign, phi, e.id)
            })
            .collect();
        let distinct: BTreeSet<VertexId> = arms.iter().map(|a| a.0).collect();
        if distinct.len() != 3 {
            return Err(GraphError::Rg3Pattern(format!(
                "neighbours of {v} are not distinct"
            )));
        }
        let plus = arms.iter().filter(|a| a.1 == Sign::Plus).count();
        let (odd_sign, flip) = match plus {
            1 => (Sign::Plus, false),
            2 => (Sign::Minus, true),
            _ => {
                return Err(GraphError::Rg3Pattern(format!(
                    "signs at {v} must be (+,-,-) or (-,+,+), found {plus} positive"
                )))
            }
        };
        let first = arms
            .iter()
            .position(|a| a.1 == odd_sign)
            .expect("odd sign present");
        let mut order = vec![first];
        order.extend((0..3).filter(|&i| i != first));
        let (w1, w2, w3) = (&arms[order[0]], &arms[order[1]], &arms[order[2]]);

        let mut out = self.clone();
        let removed: BTreeSet<EdgeId> = arms.iter().map(|a| a.3).collect();
        out.edges.retain(|e| !removed.contains(&e.id));
        out.vertices.retain(|&u| u != v);
        let next = self.next_edge_id().0;
        let adjust = |s: Sign| if flip { s.flip() } else { s };
        let triangle = [
            (w1, w2, Sign::Plus),
            (w1, w3, Sign::Plus),
            (w2, w3, Sign::Minus),
        ];
        for (k, (a, b, s)) in triangle.into_iter().enumerate() {
            out.edges.push(Edge {
                id: EdgeId(next + k as u32),
                tail: a.0,
                head: b.0,
                sign: adjust(s),
                connection: a.2.checked_inv()?.checked_mul(&b.2)?,
            });
        }
        Ok(out)
    }

    fn fresh_edge(&self, id: EdgeId) -> Result<(), GraphError> {
        if self.edge(id).is_some() {
            Err(GraphError::EdgeExists(id))
        } else {
            Ok(())
        }
    }

    fn check_arity(&self, id: EdgeId, m: &Monomial) -> Result<(), GraphError> {
        if m.num_vars() == self.vars.len() {
            Ok(())
        } else {
            Err(GraphError::ConnectionArity(
                id,
                m.num_vars(),
                self.vars.len(),
            ))
        }
    }
}

/// Edges as `(id, tail, head, sign, connection)` tuples; test and fixture shorthand.
pub fn edges_from(list: &[(u32, u32, u32, i64, &[i32])]) -> Vec<Edge> {
    list.iter()
        .map(|&(id, t, h, s, c)| Edge {
            id: EdgeId(id),
            tail: VertexId(t),
            head: VertexId(h),
            sign: Sign::from_i64(s).expect("sign must be +1 or -1"),
            connection: Monomial::from_exponents(c.to_vec()),
        })
        .collect()
}
