//! Perfect matchings of cubic multigraphs and the Eulerian families they induce.

pub mod blossom;
pub mod decomposition;
pub mod family;

use thiserror::Error;

pub use decomposition::{
    all_perfect_matchings, decompose_uniform, decompose_uniform_enumerated, min_weight_perfect_matching,
    perfect_matching, verify_uniform, MatchingDecomposition, PerfectMatching,
};
pub use family::{eulerian_family, EulerianFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("multigraph is not cubic or has a loop")]
    NotCubic,
    #[error("multigraph is not 2-edge-connected")]
    NotTwoEdgeConnected,
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("decomposition uses {size} matchings, above the bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("decomposition does not belong to this graph: {0}")]
    MismatchedDecomposition(String),
}
