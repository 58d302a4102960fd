//! Laplacian matrices, polynomials and module invariants of signed graphs
//! with homological connections in closed oriented surfaces, and their use as
//! invariants of checkerboard-colorable links in thickened surfaces.
//!
//! The main entry points:
//!
//! * [`ring::LaurentPoly`]: exact Laurent polynomials over `Z`.
//! * [`graph::SignedGraph`]: signed graphs with connections and the
//!   Reidemeister graph moves.
//! * [`laplacian`]: `L_G` and `Δ_G` by determinant, skein recursion, and
//!   cycle-rooted spanning forests.
//! * [`invariants`]: Smith normal form of the integer specialization,
//!   polynomial pairs and genus certificates.
//! * [`diagram`]: checkerboard colorability and the medial graph.

pub mod diagram;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod laplacian;
pub mod random;
pub mod ring;

pub use diagram::{
    check_checkerboard, dual_signs, medial_graph, DiagramError, DiagramSpec, RegionId, Shading,
};
pub use graph::{Edge, EdgeId, GraphError, MoveDirection, Sign, SignedGraph, VertexId};
pub use invariants::{
    genus_certificate, integer_specialization, module_invariants, pair_invariant,
    smith_normal_form, symplectic_rank, AbelianInvariants, GenusCertificate, IntMatrix,
    PairInvariant,
};
pub use laplacian::{
    crsf_enumerate, determinant, forman_sum, laplacian_matrix, laplacian_polynomial, skein_eval,
    Crsf, LaplacianError, LaplacianMatrix,
};
pub use random::{random_graph, RandomGraphParams};
pub use ring::{LaurentPoly, Monomial, RingError, VariableSet};
