//! Checkerboard-colored link diagrams and the medial signed graph.
//!
//! A diagram is described combinatorially: its regions (with a shading flag),
//! one arc record per edge of the universe naming the two regions on either
//! side, and one crossing record per crossing naming the two shaded regions
//! that meet there, the crossing weight and the connection.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, GraphError, Sign, SignedGraph, VertexId};
use crate::ring::{Monomial, VariableSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegionId(pub u32);

impl std::fmt::Display for RegionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "r{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub id: RegionId,
    pub shaded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub a: RegionId,
    pub b: RegionId,
    pub sign: Sign,
    pub connection: Monomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("duplicate region {0}")]
    DuplicateRegion(RegionId),
    #[error("unknown region {0}")]
    UnknownRegion(RegionId),
    #[error("arc {index} joins region {region} to itself")]
    SelfAdjacentArc { index: usize, region: RegionId },
    #[error("crossing {index} references unshaded region {region}")]
    UnshadedCrossing { index: usize, region: RegionId },
    #[error("crossing {index} connection has {found} exponents, expected {expected}")]
    ConnectionArity {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("not checkerboard colorable: odd cycle {}", fmt_cycle(.0))]
    OddCycle(Vec<RegionId>),
    #[error("region adjacency is disconnected ({0} pieces)")]
    Disconnected(usize),
    #[error("shading flags are not a checkerboard coloring: arc {index} has both sides {}", if *.shaded { "shaded" } else { "unshaded" })]
    InconsistentShading { index: usize, shaded: bool },
    #[error("dual skeleton has {found} edges but the graph has {expected}")]
    DualSize { found: usize, expected: usize },
    #[error("dual bijection is not total: {0}")]
    DualBijection(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn fmt_cycle(c: &[RegionId]) -> String {
    c.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" - ")
}

/// One of the two checkerboard colorings: the set of shaded regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shading {
    pub shaded: BTreeSet<RegionId>,
    pub unshaded: BTreeSet<RegionId>,
}

impl Shading {
    pub fn complement(&self) -> Shading {
        Shading {
            shaded: self.unshaded.clone(),
            unshaded: self.shaded.clone(),
        }
    }
}

/// 2-colors the region adjacency multigraph. On success returns the coloring
/// that shades the first listed region; its complement is the only other one.
/// Fails with an odd cycle when the adjacency is not bipartite (a self-adjacent
/// arc is an odd cycle of length one).
pub fn check_checkerboard(
    regions: &[RegionId],
    arcs: &[(RegionId, RegionId)],
) -> Result<Shading, DiagramError> {
    let mut index = BTreeMap::new();
    for (i, &r) in regions.iter().enumerate() {
        if index.insert(r, i).is_some() {
            return Err(DiagramError::DuplicateRegion(r));
        }
    }
    let mut adj = vec![Vec::new(); regions.len()];
    for &(a, b) in arcs {
        let ia = *index.get(&a).ok_or(DiagramError::UnknownRegion(a))?;
        let ib = *index.get(&b).ok_or(DiagramError::UnknownRegion(b))?;
        if ia == ib {
            return Err(DiagramError::OddCycle(vec![a]));
        }
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    let n = regions.len();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut pieces = 0;
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        pieces += 1;
        color[root] = Some(true);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                match color[w] {
                    None => {
                        color[w] = Some(!color[u].expect("colored"));
                        parent[w] = Some(u);
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(c) if Some(c) == color[u] => {
                        let cycle = odd_cycle(u, w, &parent, &depth);
                        return Err(DiagramError::OddCycle(
                            cycle.into_iter().map(|i| regions[i]).collect(),
                        ));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    if pieces > 1 {
        return Err(DiagramError::Disconnected(pieces));
    }
    let mut shading = Shading {
        shaded: BTreeSet::new(),
        unshaded: BTreeSet::new(),
    };
    for (i, &r) in regions.iter().enumerate() {
        if color[i] == Some(true) {
            shading.shaded.insert(r);
        } else {
            shading.unshaded.insert(r);
        }
    }
    Ok(shading)
}

/// Both checkerboard colorings, or the failure from [`check_checkerboard`].
pub fn shadings(
    regions: &[RegionId],
    arcs: &[(RegionId, RegionId)],
) -> Result<[Shading; 2], DiagramError> {
    let s = check_checkerboard(regions, arcs)?;
    let c = s.complement();
    Ok([s, c])
}

/// Closes the BFS-tree paths from `u` and `w` at their common ancestor.
fn odd_cycle(u: usize, w: usize, parent: &[Option<usize>], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].expect("deeper node has a parent");
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].expect("deeper node has a parent");
        right.push(b);
    }
    while a != b {
        a = parent[a].expect("not yet at root");
        b = parent[b].expect("not yet at root");
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// A checkerboard-colored diagram in a genus-`g` surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSpec {
    vars: VariableSet,
    regions: Vec<Region>,
    arcs: Vec<(RegionId, RegionId)>,
    crossings: Vec<Crossing>,
}

impl DiagramSpec {
    pub fn new(
        vars: VariableSet,
        regions: Vec<Region>,
        arcs: Vec<(RegionId, RegionId)>,
        crossings: Vec<Crossing>,
    ) -> Result<Self, DiagramError> {
        let mut shaded = BTreeMap::new();
        for r in &regions {
            if shaded.insert(r.id, r.shaded).is_some() {
                return Err(DiagramError::DuplicateRegion(r.id));
            }
        }
        for (index, &(a, b)) in arcs.iter().enumerate() {
            for r in [a, b] {
                if !shaded.contains_key(&r) {
                    return Err(DiagramError::UnknownRegion(r));
                }
            }
            if a == b {
                return Err(DiagramError::SelfAdjacentArc { index, region: a });
            }
        }
        for (index, c) in crossings.iter().enumerate() {
            for r in [c.a, c.b] {
                match shaded.get(&r) {
                    None => return Err(DiagramError::UnknownRegion(r)),
                    Some(false) => return Err(DiagramError::UnshadedCrossing { index, region: r }),
                    Some(true) => {}
                }
            }
            if c.connection.num_vars() != vars.len() {
                return Err(DiagramError::ConnectionArity {
                    index,
                    found: c.connection.num_vars(),
                    expected: vars.len(),
                });
            }
        }
        Ok(DiagramSpec {
            vars,
            regions,
            arcs,
            crossings,
        })
    }

    pub fn vars(&self) -> VariableSet {
        self.vars
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn arcs(&self) -> &[(RegionId, RegionId)] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn region_ids(&self) -> Vec<RegionId> {
        self.regions.iter().map(|r| r.id).collect()
    }

    /// Checks colorability and that the stored shading flags are one of the
    /// two colorings.
    pub fn verify_shading(&self) -> Result<Shading, DiagramError> {
        check_checkerboard(&self.region_ids(), &self.arcs)?;
        let flag: BTreeMap<RegionId, bool> =
            self.regions.iter().map(|r| (r.id, r.shaded)).collect();
        for (index, (a, b)) in self.arcs.iter().enumerate() {
            if flag[a] == flag[b] {
                return Err(DiagramError::InconsistentShading {
                    index,
                    shaded: flag[a],
                });
            }
        }
        Ok(Shading {
            shaded: self
                .regions
                .iter()
                .filter(|r| r.shaded)
                .map(|r| r.id)
                .collect(),
            unshaded: self
                .regions
                .iter()
                .filter(|r| !r.shaded)
                .map(|r| r.id)
                .collect(),
        })
    }
}

/// One vertex per shaded region (id = region id, region order), one edge per
/// crossing (id = crossing index) carrying its weight and connection.
pub fn medial_graph(d: &DiagramSpec) -> Result<SignedGraph, DiagramError> {
    d.verify_shading()?;
    let vertices = d
        .regions
        .iter()
        .filter(|r| r.shaded)
        .map(|r| VertexId(r.id.0))
        .collect();
    let edges = d
        .crossings
        .iter()
        .enumerate()
        .map(|(i, c)| Edge {
            id: EdgeId(i as u32),
            tail: VertexId(c.a.0),
            head: VertexId(c.b.0),
            sign: c.sign,
            connection: c.connection.clone(),
        })
        .collect();
    Ok(SignedGraph::new(d.vars, vertices, edges)?)
}

/// Builds `G*` from a user-supplied skeleton (vertices, incidences and
/// connections of the dual) by setting each dual edge's sign to the negation
/// of its partner's. `partner` maps each edge id of `g` to the id of its dual
/// edge in `skeleton`; `None` pairs edges in list order.
pub fn dual_signs(
    g: &SignedGraph,
    skeleton: &SignedGraph,
    partner: Option<&BTreeMap<EdgeId, EdgeId>>,
) -> Result<SignedGraph, DiagramError> {
    if g.vars() != skeleton.vars() {
        return Err(GraphError::Ring(crate::ring::RingError::VariableMismatch {
            left: g.vars().genus(),
            right: skeleton.vars().genus(),
        })
        .into());
    }
    if g.num_edges() != skeleton.num_edges() {
        return Err(DiagramError::DualSize {
            found: skeleton.num_edges(),
            expected: g.num_edges(),
        });
    }
    let pairing: BTreeMap<EdgeId, EdgeId> = match partner {
        Some(map) => map.clone(),
        None => g
            .edges()
            .iter()
            .zip(skeleton.edges())
            .map(|(e, d)| (e.id, d.id))
            .collect(),
    };
    let mut dual_sign: BTreeMap<EdgeId, Sign> = BTreeMap::new();
    for e in g.edges() {
        let d = pairing.get(&e.id).ok_or_else(|| {
            DiagramError::DualBijection(format!("edge {} has no dual partner", e.id))
        })?;
        if skeleton.edge(*d).is_none() {
            return Err(DiagramError::DualBijection(format!(
                "dual edge {d} does not exist"
            )));
        }
        if dual_sign.insert(*d, e.sign.flip()).is_some() {
            return Err(DiagramError::DualBijection(format!(
                "dual edge {d} is paired twice"
            )));
        }
    }
    let edges = skeleton
        .edges()
        .iter()
        .map(|d| Edge {
            sign: dual_sign[&d.id],
            ..d.clone()
        })
        .collect();
    Ok(SignedGraph::new(
        skeleton.vars(),
        skeleton.vertices().to_vec(),
        edges,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edges_from;

    fn r(ids: &[u32]) -> Vec<RegionId> {
        ids.iter().map(|&i| RegionId(i)).collect()
    }

    fn arcs(list: &[(u32, u32)]) -> Vec<(RegionId, RegionId)> {
        list.iter()
            .map(|&(a, b)| (RegionId(a), RegionId(b)))
            .collect()
    }

    #[test]
    fn bipartite_regions_give_two_shadings() {
        // A square grid of four regions around a crossing.
        let regions = r(&[0, 1, 2, 3]);
        let a = arcs(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let [s, c] = shadings(&regions, &a).unwrap();
        assert_eq!(s.shaded, r(&[0, 2]).into_iter().collect());
        assert_eq!(c.shaded, r(&[1, 3]).into_iter().collect());
        assert_eq!(s.complement(), c);
    }

    #[test]
    fn triangle_of_regions_is_an_odd_cycle() {
        let err = check_checkerboard(&r(&[0, 1, 2]), &arcs(&[(0, 1), (1, 2), (2, 0)])).unwrap_err();
        match err {
            DiagramError::OddCycle(cycle) => {
                assert_eq!(cycle.len(), 3);
                let set: BTreeSet<RegionId> = cycle.into_iter().collect();
                assert_eq!(set, r(&[0, 1, 2]).into_iter().collect());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            check_checkerboard(&r(&[4]), &arcs(&[(4, 4)])),
            Err(DiagramError::OddCycle(r(&[4])))
        );
    }

    #[test]
    fn odd_cycle_witness_is_a_closed_walk() {
        // Even square with a pentagon hanging off region 0.
        let regions = r(&[0, 1, 2, 3, 4, 5, 6]);
        let list = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (0, 4),
            (4, 5),
            (5, 6),
            (6, 0),
            (4, 6),
        ];
        let a = arcs(&list);
        let DiagramError::OddCycle(cycle) = check_checkerboard(&regions, &a).unwrap_err() else {
            panic!("expected odd cycle");
        };
        assert_eq!(cycle.len() % 2, 1);
        let adjacent =
            |x: RegionId, y: RegionId| a.iter().any(|&(p, q)| (p, q) == (x, y) || (p, q) == (y, x));
        for k in 0..cycle.len() {
            assert!(
                adjacent(cycle[k], cycle[(k + 1) % cycle.len()]),
                "{cycle:?}"
            );
        }
    }

    #[test]
    fn theta_diagram_regions() {
        // Two triangular shaded regions around one unshaded region.
        let regions = r(&[0, 1, 2]);
        let a = arcs(&[(0, 2), (0, 2), (0, 2), (1, 2), (1, 2), (1, 2)]);
        let s = check_checkerboard(&regions, &a).unwrap();
        assert_eq!(s.shaded, r(&[0, 1]).into_iter().collect());
    }

    #[test]
    fn disconnected_and_unknown_regions() {
        assert_eq!(
            check_checkerboard(&r(&[0, 1, 2, 3]), &arcs(&[(0, 1), (2, 3)])),
            Err(DiagramError::Disconnected(2))
        );
        assert_eq!(
            check_checkerboard(&r(&[0]), &arcs(&[(0, 5)])),
            Err(DiagramError::UnknownRegion(RegionId(5)))
        );
        assert!(check_checkerboard(&r(&[0]), &[]).is_ok());
    }

    fn region(id: u32, shaded: bool) -> Region {
        Region {
            id: RegionId(id),
            shaded,
        }
    }

    fn crossing(a: u32, b: u32, sign: Sign, exps: &[i32]) -> Crossing {
        Crossing {
            a: RegionId(a),
            b: RegionId(b),
            sign,
            connection: Monomial::from_exponents(exps.to_vec()),
        }
    }

    #[test]
    fn diagram_invariants_enforced() {
        let vars = VariableSet::new(1);
        let self_arc = DiagramSpec::new(vars, vec![region(0, true)], arcs(&[(0, 0)]), vec![]);
        assert_eq!(
            self_arc,
            Err(DiagramError::SelfAdjacentArc {
                index: 0,
                region: RegionId(0)
            })
        );
        let unshaded = DiagramSpec::new(
            vars,
            vec![region(0, true), region(1, false)],
            arcs(&[(0, 1)]),
            vec![crossing(0, 1, Sign::Plus, &[0, 0])],
        );
        assert_eq!(
            unshaded,
            Err(DiagramError::UnshadedCrossing {
                index: 0,
                region: RegionId(1)
            })
        );
    }

    #[test]
    fn medial_of_theta_diagram() {
        let vars = VariableSet::new(1);
        let d = DiagramSpec::new(
            vars,
            vec![region(0, true), region(1, true), region(2, false)],
            arcs(&[(0, 2), (0, 2), (0, 2), (1, 2), (1, 2), (1, 2)]),
            vec![
                crossing(0, 1, Sign::Plus, &[0, 0]),
                crossing(0, 1, Sign::Plus, &[1, 0]),
                crossing(0, 1, Sign::Plus, &[0, 1]),
            ],
        )
        .unwrap();
        let g = medial_graph(&d).unwrap();
        let theta = SignedGraph::new(
            vars,
            vec![VertexId(0), VertexId(1)],
            edges_from(&[
                (0, 0, 1, 1, &[0, 0]),
                (1, 0, 1, 1, &[1, 0]),
                (2, 0, 1, 1, &[0, 1]),
            ]),
        )
        .unwrap();
        assert_eq!(g, theta);
    }

    #[test]
    fn medial_without_crossings_and_bad_shading() {
        let vars = VariableSet::new(1);
        let d = DiagramSpec::new(
            vars,
            vec![region(3, true), region(4, false)],
            arcs(&[(3, 4)]),
            vec![],
        )
        .unwrap();
        assert_eq!(
            medial_graph(&d).unwrap(),
            SignedGraph::new(vars, vec![VertexId(3)], vec![]).unwrap()
        );
        let bad = DiagramSpec::new(
            vars,
            vec![region(0, true), region(1, true), region(2, false)],
            arcs(&[(0, 1), (1, 2), (2, 0), (0, 1)]),
            vec![],
        )
        .unwrap();
        assert!(matches!(medial_graph(&bad), Err(DiagramError::OddCycle(_))));
        let wrong_flags = DiagramSpec::new(
            vars,
            vec![region(0, true), region(1, true)],
            arcs(&[(0, 1)]),
            vec![],
        )
        .unwrap();
        assert!(matches!(
            medial_graph(&wrong_flags),
            Err(DiagramError::InconsistentShading { .. })
        ));
    }

    #[test]
    fn dual_sign_rule() {
        let vars = VariableSet::new(1);
        let g = SignedGraph::new(
            vars,
            vec![VertexId(0), VertexId(1)],
            edges_from(&[(0, 0, 1, 1, &[0, 0]), (1, 0, 1, -1, &[1, 0])]),
        )
        .unwrap();
        let skeleton = SignedGraph::new(
            vars,
            vec![VertexId(0)],
            edges_from(&[(10, 0, 0, 1, &[0, 1]), (11, 0, 0, 1, &[1, 1])]),
        )
        .unwrap();
        let dual = dual_signs(&g, &skeleton, None).unwrap();
        let signs: Vec<i64> = dual.edges().iter().map(|e| e.sign.value()).collect();
        assert_eq!(signs, vec![-1, 1]);
        assert_eq!(dual.edges()[0].connection, skeleton.edges()[0].connection);

        let swapped: BTreeMap<EdgeId, EdgeId> =
            [(EdgeId(0), EdgeId(11)), (EdgeId(1), EdgeId(10))].into();
        let dual = dual_signs(&g, &skeleton, Some(&swapped)).unwrap();
        let signs: Vec<i64> = dual.edges().iter().map(|e| e.sign.value()).collect();
        assert_eq!(signs, vec![1, -1]);

        // Applying the rule twice restores the original signs.
        let back = dual_signs(&dual, &g, None).unwrap();
        assert_eq!(
            back.edges().iter().map(|e| e.sign).collect::<Vec<_>>(),
            vec![Sign::Minus, Sign::Plus]
        );

        let partial: BTreeMap<EdgeId, EdgeId> = [(EdgeId(0), EdgeId(10))].into();
        assert!(matches!(
            dual_signs(&g, &skeleton, Some(&partial)),
            Err(DiagramError::DualBijection(_))
        ));
        let twice: BTreeMap<EdgeId, EdgeId> =
            [(EdgeId(0), EdgeId(10)), (EdgeId(1), EdgeId(10))].into();
        assert!(matches!(
            dual_signs(&g, &skeleton, Some(&twice)),
            Err(DiagramError::DualBijection(_))
        ));
        let small = SignedGraph::new(vars, vec![VertexId(0)], vec![]).unwrap();
        assert!(matches!(
            dual_signs(&g, &small, None),
            Err(DiagramError::DualSize { .. })
        ));
    }

    #[test]
    fn self_dual_single_edge() {
        let vars = VariableSet::new(1);
        let g = SignedGraph::new(
            vars,
            vec![VertexId(0)],
            edges_from(&[(0, 0, 0, 1, &[1, 0])]),
        )
        .unwrap();
        let d = dual_signs(&g, &g, None).unwrap();
        assert_eq!(d.edges()[0].sign, Sign::Minus);
    }
}
