//! Recognition of nearly conservative weight functions (every negative cycle
//! has exactly two arcs) and all-pairs shortest simple paths for them.
//!
//! Vertex ids are 0-based throughout the library; the file format and the
//! command line use 1-based ids.

pub mod apsp;
pub mod bench;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod format;
pub mod generator;
pub mod graph;
pub mod matrix;
pub mod mixed;
pub mod oracle;
pub mod paths;
pub mod tree;
pub mod witness;

pub use apsp::{subset_dp, Pivot, SubsetDpOptions, UnitOutcome, UnitSolution};
pub use decomposition::{solve, ApspOutcome, Solution, SolveOptions};
pub use error::{Error, Result};
pub use graph::{classify_and_augment, normalize, ArcKind, WeightedDigraph};
pub use matrix::{DistanceMatrix, PredecessorMatrix};
pub use mixed::{mixed_to_digraph, solve_mixed, MixedInstance};
pub use paths::Path;
pub use witness::{Witness, WitnessKind};
