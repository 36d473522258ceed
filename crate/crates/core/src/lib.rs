//! Cut sparsification of undirected multigraphs.
//!
//! Edges are sampled with probability inversely proportional to a
//! connectivity estimate `κ_e` (exact local connectivity, effective
//! conductance, strength, Nagamochi–Ibaraki labels or a recursive
//! k-partition estimate), or the sparsifier is built as a weighted union of
//! random spanning trees. The `contraction` and `verify` modules provide the
//! brute-force machinery used to check cut preservation and cut-counting
//! bounds on small graphs.

pub mod connectivity;
pub mod contraction;
pub mod corpus;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod rng;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
pub use generators::{generate, GraphFamily};
pub use graph::{cut_weight, Edge, EdgeId, Multigraph, SparseEdge, Sparsifier, VertexCut};
