//! Shift spaces over small transition graphs: periodic points, sliding
//! block codes, the refined graph relating the two codings, and the
//! period-4 obstruction for Brown's automorphism.

mod block_code;
mod ghat;
mod graph;
mod permutation;
mod theorem2;
mod word;

pub use block_code::{
    apply_block_code, code_bijectivity, compose_block_codes, has_diamond, Bijectivity,
    SlidingBlockCode,
};
pub use ghat::{lift_codings, project, ClosedPath, GhatVertex, Projection};
pub use graph::{build_graph, periodic_points, GraphTag, TransitionGraph};
pub use permutation::CodePermutation;
pub use theorem2::{theorem2_report, Assertion, Theorem2Report, X_LISTING, Y_LISTING};
pub use word::{all_words, word, CyclicWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("word must have at least one symbol")]
    EmptyWord,
    #[error("bad symbol {0:?}")]
    BadSymbol(String),
    #[error("unknown graph {0:?}")]
    UnknownGraph(String),
    #[error("edge {0}->{1} has an undeclared endpoint")]
    BadEdge(u8, u8),
    #[error("vertex {0} has no incoming or no outgoing edge")]
    StrandedVertex(String),
    #[error("piece ({0},{1}) is empty")]
    EmptyIntersection(u8, u8),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("rows have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("inner code emits {inner} symbols but outer reads {outer}")]
    AlphabetMismatch { inner: u8, outer: u8 },
    #[error("malformed block code: {0}")]
    BadCode(String),
    #[error("map is not a bijection of its domain")]
    NotBijective,
    #[error("permutations act on different sets")]
    DomainMismatch,
}
