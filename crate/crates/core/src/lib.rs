//! Colored C5 decompositions and the multicolor Turán number
//! `ex_{C5}(C3, n)`: the largest `k` such that `k` edge-disjoint 5-cycles on
//! `n` vertices, each its own color, contain no triangle with three distinct
//! colors.
//!
//! * [`graph`]: decompositions, adjacency queries, multicolored pattern search.
//! * [`constructions`]: blow-up packings, the crossing-edge perturbation, K5-stars.
//! * [`verifier`]: certificate checks and triangle censuses.
//! * [`solver`]: exact branch and bound for small `n`, with a brute-force oracle.
//! * [`analyzer`]: degree deviations, vertex-split bounds, partition structure.
//! * [`certificate`]: the `mct 1` text format.
//! * [`generate`]: random triangle-safe decompositions for test corpora.

pub mod analyzer;
pub mod bitset;
pub mod certificate;
pub mod constructions;
pub mod generate;
pub mod graph;
pub mod partition;
pub mod solver;
pub mod verifier;

pub use graph::{ColoredGraph, Cycle, GraphError, PatternGraph, Vertex};
pub use partition::BlowupPartition;
