//! The connection Laplacian `L_G` and three routes to its determinant `Δ_G`:
//! symbolic cofactor expansion, the deletion/contraction recursion, and the
//! sum over cycle-rooted spanning forests.
//!
//! Sign convention: the diagonal carries the signed degree (`σ_e` per non-loop
//! edge, `σ_e (2 - φ_e - φ_e^-1)` per loop) and off-diagonal entries are
//! `-Σ σ_e φ_e` read from row vertex to column vertex. With this orientation
//! the three routes agree exactly, not just up to sign.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Edge, EdgeId, SignedGraph, VertexId};
use crate::ring::{LaurentPoly, Monomial, VariableSet};

/// Largest edge count accepted by exhaustive CRSF enumeration.
pub const CRSF_EDGE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaplacianError {
    #[error("CRSF enumeration is limited to {limit} edges, graph has {edges}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix entry ({row}, {col}) is over genus {found}, expected {expected}")]
    EntryVariables {
        row: usize,
        col: usize,
        found: usize,
        expected: usize,
    },
}

/// Square matrix of Laurent polynomials, rows and columns indexed by vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianMatrix {
    vars: VariableSet,
    vertices: Vec<VertexId>,
    rows: Vec<Vec<LaurentPoly>>,
}

impl LaplacianMatrix {
    /// Wraps an explicit matrix; rows are labelled `0..n`.
    pub fn from_rows(
        vars: VariableSet,
        rows: Vec<Vec<LaurentPoly>>,
    ) -> Result<Self, LaplacianError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(LaplacianError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, p) in row.iter().enumerate() {
                if p.vars() != vars {
                    return Err(LaplacianError::EntryVariables {
                        row: i,
                        col: j,
                        found: p.vars().genus(),
                        expected: vars.genus(),
                    });
                }
            }
        }
        Ok(LaplacianMatrix {
            vars,
            vertices: (0..n as u32).map(VertexId).collect(),
            rows,
        })
    }

    pub fn vars(&self) -> VariableSet {
        self.vars
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    /// `entry(j, i) == bar(entry(i, j))` for all `i, j`.
    pub fn is_bar_hermitian(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (i..n).all(|j| self.rows[j][i] == self.rows[i][j].bar()))
    }

    pub fn determinant(&self) -> LaurentPoly {
        determinant(self)
    }
}

/// Builds `L_G` in the graph's vertex order.
pub fn laplacian_matrix(g: &SignedGraph) -> LaplacianMatrix {
    let vars = g.vars();
    let n = g.num_vertices();
    let mut rows = vec![vec![LaurentPoly::zero(vars); n]; n];
    for e in g.edges() {
        let i = g.vertex_index(e.tail).expect("validated endpoint");
        let j = g.vertex_index(e.head).expect("validated endpoint");
        let s = BigInt::from(e.sign.value());
        if i == j {
            rows[i][i] = &rows[i][i] + &loop_weight(vars, &e.connection).scale(&s);
        } else {
            let sigma = LaurentPoly::constant(vars, s.clone());
            rows[i][i] = &rows[i][i] + &sigma;
            rows[j][j] = &rows[j][j] + &sigma;
            let fwd = LaurentPoly::term(vars, -s.clone(), e.connection.clone());
            let back = LaurentPoly::term(vars, -s, e.connection.inv());
            rows[i][j] = &rows[i][j] + &fwd;
            rows[j][i] = &rows[j][i] + &back;
        }
    }
    LaplacianMatrix {
        vars,
        vertices: g.vertices().to_vec(),
        rows,
    }
}

/// `2 - φ - φ^-1`.
pub fn loop_weight(vars: VariableSet, phi: &Monomial) -> LaurentPoly {
    LaurentPoly::from_terms(
        vars,
        [(2, Monomial::one(vars)), (-1, phi.clone()), (-1, phi.inv())],
    )
}

/// Exact determinant by cofactor expansion along successive rows, memoized
/// over the set of columns already used. `O(2^n n)` ring operations.
pub fn determinant(m: &LaplacianMatrix) -> LaurentPoly {
    let n = m.size();
    let vars = m.vars;
    if n == 0 {
        return LaurentPoly::one(vars);
    }
    assert!(
        n < usize::BITS as usize,
        "matrix too large for subset expansion"
    );
    // minors[mask] = det of rows 0..|mask| restricted to the columns in mask.
    let mut minors: HashMap<usize, LaurentPoly> = HashMap::new();
    minors.insert(0, LaurentPoly::one(vars));
    let mut layer = vec![0usize];
    for row in 0..n {
        let mut next: HashMap<usize, LaurentPoly> = HashMap::new();
        for &mask in &layer {
            let minor = &minors[&mask];
            if minor.is_zero() {
                continue;
            }
            for col in (0..n).filter(|c| mask & (1 << c) == 0) {
                let entry = &m.rows[row][col];
                if entry.is_zero() {
                    continue;
                }
                // Column `col` sits after the columns of `mask` that exceed it.
                let above = (mask >> (col + 1)).count_ones();
                let mut term = entry * minor;
                if above % 2 == 1 {
                    term = -term;
                }
                let slot = next
                    .entry(mask | (1 << col))
                    .or_insert_with(|| LaurentPoly::zero(vars));
                *slot = &*slot + &term;
            }
        }
        layer = next.keys().copied().collect();
        layer.sort_unstable();
        minors = next;
    }
    minors
        .remove(&((1usize << n) - 1))
        .unwrap_or_else(|| LaurentPoly::zero(vars))
}

/// Deletion/contraction: `Δ_G = Δ_{G∖e} + σ_e Δ_{G/e}` on the lowest-id
/// non-loop edge of the first component that still has one.
///
/// Base cases: a one-vertex component contributes `Σ σ_e (2 - φ_e - φ_e^-1)`
/// over its loops (zero if it has none); a component that is a single cycle
/// contributes the product of its signs times `2 - φ - φ^-1`. Components
/// multiply.
pub fn skein_eval(g: &SignedGraph) -> LaurentPoly {
    let vars = g.vars();
    let mut acc = LaurentPoly::one(vars);
    if g.num_vertices() == 0 {
        return acc;
    }
    let comps = g.components();
    let mut pending = Vec::new();
    for comp in &comps {
        let sub = g.induced(comp);
        match component_shortcut(&sub) {
            Some(p) if p.is_zero() => return p,
            Some(p) => acc = &acc * &p,
            None => pending.push(sub),
        }
    }
    if pending.is_empty() {
        return acc;
    }
    // Recurse on the first non-base component; the rest are independent factors.
    let first = pending.remove(0);
    let rest: Vec<LaurentPoly> = pending.iter().map(skein_eval).collect();
    for p in rest {
        if p.is_zero() {
            return p;
        }
        acc = &acc * &p;
    }
    &acc * &skein_component(&first)
}

fn skein_component(g: &SignedGraph) -> LaurentPoly {
    let e = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .min_by_key(|e| e.id)
        .expect("non-base component has a non-loop edge");
    let deleted = g.delete_edge(e.id).expect("edge exists");
    let contracted = g.contract_edge(e.id).expect("non-loop edge");
    let sigma = BigInt::from(e.sign.value());
    let (d, c) = if g.num_edges() >= 10 {
        rayon::join(|| skein_eval(&deleted), || skein_eval(&contracted))
    } else {
        (skein_eval(&deleted), skein_eval(&contracted))
    };
    &d + &c.scale(&sigma)
}

/// Closed forms for a connected graph: single vertex, or a single cycle.
fn component_shortcut(g: &SignedGraph) -> Option<LaurentPoly> {
    let vars = g.vars();
    if g.num_vertices() == 1 {
        return Some(g.edges().iter().fold(LaurentPoly::zero(vars), |acc, e| {
            &acc + &loop_weight(vars, &e.connection).scale(&BigInt::from(e.sign.value()))
        }));
    }
    let is_cycle =
        g.num_edges() == g.num_vertices() && g.vertices().iter().all(|&v| g.degree(v) == 2);
    if is_cycle {
        let steps = cycle_walk(g)?;
        let phi = g.walk_connection(&steps).expect("edges exist");
        let sign: i64 = g.edges().iter().map(|e| e.sign.value()).product();
        return Some(loop_weight(vars, &phi).scale(&BigInt::from(sign)));
    }
    None
}

/// Walks a connected 2-regular graph once around, as `(edge, forward)` steps.
fn cycle_walk(g: &SignedGraph) -> Option<Vec<(EdgeId, bool)>> {
    let start = g.vertices()[0];
    let mut at = start;
    let mut used: Vec<EdgeId> = Vec::new();
    let mut steps = Vec::new();
    loop {
        let e = g
            .edges()
            .iter()
            .find(|e| e.touches(at) && !used.contains(&e.id))?;
        used.push(e.id);
        let forward = e.tail == at;
        steps.push((e.id, forward));
        at = if forward { e.head } else { e.tail };
        if at == start {
            break;
        }
    }
    (steps.len() == g.num_edges()).then_some(steps)
}

/// A cycle-rooted spanning forest: an edge subset covering every vertex in
/// which each component carries exactly one cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crsf {
    pub edges: Vec<EdgeId>,
    /// One connection per component cycle, oriented so the first nonzero
    /// exponent is positive.
    pub cycles: Vec<Monomial>,
}

impl Crsf {
    pub fn weight(&self, g: &SignedGraph) -> LaurentPoly {
        let vars = g.vars();
        let sign: i64 = self
            .edges
            .iter()
            .map(|id| g.edge(*id).expect("edge of g").sign.value())
            .product();
        self.cycles
            .iter()
            .fold(LaurentPoly::constant(vars, sign), |acc, phi| {
                &acc * &loop_weight(vars, phi)
            })
    }
}

/// Every CRSF of `g`, by exhaustive scan of the `|V|`-edge subsets.
pub fn crsf_enumerate(g: &SignedGraph) -> Result<Vec<Crsf>, LaplacianError> {
    let m = g.num_edges();
    if m > CRSF_EDGE_LIMIT {
        return Err(LaplacianError::TooManyEdges {
            edges: m,
            limit: CRSF_EDGE_LIMIT,
        });
    }
    let n = g.num_vertices();
    if n == 0 {
        return Ok(vec![Crsf {
            edges: Vec::new(),
            cycles: Vec::new(),
        }]);
    }
    if n > m {
        return Ok(Vec::new());
    }
    let masks: Vec<u32> = (0u32..(1u32 << m))
        .filter(|s| s.count_ones() as usize == n)
        .collect();
    let found: Vec<Crsf> = masks
        .par_iter()
        .filter_map(|&mask| {
            let chosen: Vec<&Edge> = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| &g.edges()[i])
                .collect();
            unicyclic_forest(g, &chosen)
        })
        .collect();
    Ok(found)
}

/// If `chosen` (with `|chosen| = |V|`) makes every component unicyclic,
/// returns the forest with its cycle connections.
fn unicyclic_forest(g: &SignedGraph, chosen: &[&Edge]) -> Option<Crsf> {
    let n = g.num_vertices();
    let index = |v: VertexId| g.vertex_index(v).expect("validated endpoint");
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, e) in chosen.iter().enumerate() {
        let (a, b) = (index(e.tail), index(e.head));
        adj[a].push((k, b));
        if a != b {
            adj[b].push((k, a));
        }
    }
    // Potential of each vertex along a spanning tree of its component; the one
    // non-tree edge per component closes the cycle.
    let mut potential: Vec<Option<Monomial>> = vec![None; n];
    let mut tree_edge = vec![false; chosen.len()];
    let mut cycles = Vec::new();
    for root in 0..n {
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some(Monomial::one(g.vars()));
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &(k, w) in &adj[u] {
                if potential[w].is_none() {
                    let e = chosen[k];
                    let pu = potential[u].as_ref().expect("visited");
                    let step = if index(e.tail) == u {
                        e.connection.clone()
                    } else {
                        e.connection.inv()
                    };
                    potential[w] = Some(pu.mul(&step));
                    tree_edge[k] = true;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        let comp_edges: Vec<usize> = (0..chosen.len())
            .filter(|&k| members.contains(&index(chosen[k].tail)))
            .collect();
        if comp_edges.len() != members.len() {
            return None;
        }
        let closing = comp_edges
            .iter()
            .copied()
            .find(|&k| !tree_edge[k])
            .expect("one extra edge");
        let e = chosen[closing];
        let pt = potential[index(e.tail)].as_ref().expect("visited");
        let ph = potential[index(e.head)].as_ref().expect("visited");
        cycles.push(pt.mul(&e.connection).mul(&ph.inv()).orient_positive());
    }
    Some(Crsf {
        edges: chosen.iter().map(|e| e.id).collect(),
        cycles,
    })
}

/// `Σ_F Π_{e∈F} σ_e Π_{cycles} (2 - φ - φ^-1)` over all CRSFs.
pub fn forman_sum(g: &SignedGraph) -> Result<LaurentPoly, LaplacianError> {
    let forests = crsf_enumerate(g)?;
    let vars = g.vars();
    Ok(forests
        .iter()
        .fold(LaurentPoly::zero(vars), |acc, f| &acc + &f.weight(g)))
}

/// `Δ_G` via the determinant of the Laplacian.
pub fn laplacian_polynomial(g: &SignedGraph) -> LaurentPoly {
    determinant(&laplacian_matrix(g))
}

/// Augmentation of each row sum; all zero for any Laplacian.
pub fn row_augmentations(m: &LaplacianMatrix) -> Vec<BigInt> {
    m.rows
        .iter()
        .map(|row| row.iter().fold(BigInt::zero(), |acc, p| acc + p.augment()))
        .collect()
}
