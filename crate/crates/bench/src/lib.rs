//! Benchmark inputs shared by the criterion suites.

use surflap_core::{random_graph, RandomGraphParams, SignedGraph};

/// A fixed family of random graphs with `vertices` vertices and `edges` edges.
pub fn corpus(vertices: u32, edges: u32, genus: usize, count: u64) -> Vec<SignedGraph> {
    (0..count)
        .map(|seed| {
            random_graph(
                seed,
                RandomGraphParams {
                    vertices,
                    edges,
                    genus,
                    max_exponent: 2,
                },
            )
        })
        .collect()
}
