//! Seeded random graphs for property tests, benchmarks and `selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, EdgeId, Sign, SignedGraph, VertexId};
use crate::ring::{Monomial, VariableSet};

/// Shape of a random graph: `vertices` (at least one), `edges` with uniform
/// endpoints (loops allowed), uniform signs, and connection exponents uniform
/// in `[-max_exponent, max_exponent]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomGraphParams {
    pub vertices: u32,
    pub edges: u32,
    pub genus: usize,
    pub max_exponent: i32,
}

/// Deterministic in `seed` across platforms.
pub fn random_graph(seed: u64, params: RandomGraphParams) -> SignedGraph {
    assert!(
        params.vertices >= 1,
        "random graphs need at least one vertex"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(&mut rng, params)
}

pub fn random_graph_with<R: Rng>(rng: &mut R, params: RandomGraphParams) -> SignedGraph {
    let vars = VariableSet::new(params.genus);
    let n = params.vertices;
    let k = params.max_exponent.abs();
    let edges = (0..params.edges)
        .map(|i| Edge {
            id: EdgeId(i),
            tail: VertexId(rng.gen_range(0..n)),
            head: VertexId(rng.gen_range(0..n)),
            sign: if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            },
            connection: Monomial::from_exponents(
                (0..vars.len())
                    .map(|_| rng.gen_range(-k..=k))
                    .collect::<Vec<_>>(),
            ),
        })
        .collect();
    SignedGraph::new(vars, (0..n).map(VertexId).collect(), edges).expect("generated graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let params = RandomGraphParams {
            vertices: 4,
            edges: 6,
            genus: 2,
            max_exponent: 2,
        };
        assert_eq!(random_graph(7, params), random_graph(7, params));
        assert_ne!(random_graph(7, params), random_graph(8, params));
    }

    #[test]
    fn single_vertex_no_edges() {
        let g = random_graph(
            1,
            RandomGraphParams {
                vertices: 1,
                edges: 0,
                genus: 1,
                max_exponent: 2,
            },
        );
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn respects_bounds() {
        let g = random_graph(
            3,
            RandomGraphParams {
                vertices: 5,
                edges: 40,
                genus: 2,
                max_exponent: 1,
            },
        );
        assert!(g
            .edges()
            .iter()
            .all(|e| e.connection.exponents().iter().all(|x| x.abs() <= 1)));
        assert!(g.edges().iter().all(|e| e.connection.num_vars() == 4));
    }
}
