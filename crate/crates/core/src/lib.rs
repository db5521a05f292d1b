//! Exact walk-matrix determinants of rooted product graphs.
//!
//! The crate computes `det W_M(G∘H)` for adjacency, signless Laplacian and
//! `A_α` matrices, checks it against the factorisation through
//! `Res(φ(M(H)), φ(M^{(v)}(H)))`, `det h(M(G))` and `det W_M(G)`, and uses
//! the factorisation to search for rooted graphs that preserve the family
//! `F` of graphs with `det A = ±1` and `det W_A = ±2^{n/2}`.
//!
//! All arithmetic is over arbitrary-precision integers; nothing is ever
//! approximated.

pub mod error;
pub mod exactlinalg;
pub mod exec;
pub mod graphs;
pub mod poly;
pub mod search;
mod serde_big;
pub mod walk;

pub use error::{Error, Result};
pub use exactlinalg::{charpoly, det_bareiss, IntMatrix, RatScalar};
pub use exec::Exec;
pub use graphs::{
    emit_graph6, enumerate_graphs, matrix_of, parse_graph6, rooted_product, Graph, MatrixKind, RootedGraph,
};
pub use poly::{interpolate_exact, is_pm_monomial, sylvester_resultant, IntPoly, RatPoly};
pub use walk::{
    controllability_check, dgs_family_step, f_certificate, f_membership, h_poly, preserver_check, theorem_main_verify,
    walk_det, walk_matrix, ControllabilityReport, FCertificate, PreserverReport, WalkReport,
};
