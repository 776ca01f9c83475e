use thiserror::Error;

use crate::complex::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
  #[error("the 1-skeleton is not connected")]
  NotConnected,

  #[error("not a bijection on vertex positions 0..{0}")]
  BadPermutation(usize),

  #[error("complex has no maximal tree")]
  MissingTree,

  #[error("invalid complex: {0}")]
  Invalid(ValidationReport),

  #[error("matrix shape mismatch: expected {expected} columns, found {found}")]
  ShapeMismatch { expected: usize, found: usize },

  #[error("argument must be positive, got {0}")]
  NonPositive(i64),

  #[error("series truncation orders differ ({0} vs {1})")]
  OrderMismatch(usize, usize),

  #[error("series has a nonzero constant term")]
  NonzeroConstantTerm,

  #[error("exactly-two condition fails at triangle ({0},{1},{2})")]
  ConditionFailed(String, String, String),

  #[error("weighted homology is only available for graphs (complex has triangles)")]
  HasTriangles,

  #[error("edge ({0},{1}) has weight 0; weighted homology needs nonzero weights")]
  ZeroWeightEdge(String, String),

  #[error("series order {order} is smaller than requested rank index {max_n}")]
  TruncationTooSmall { order: usize, max_n: usize },

  #[error("lower central series rank R{0} is not a nonnegative integer")]
  NonIntegerRank(usize),

  #[error("van Kampen hypotheses fail: {0}")]
  HypothesesFailed(ValidationReport),

  #[error("graph has {0} vertices; Hamiltonian enumeration is capped at {1}")]
  TooLarge(usize, usize),

  #[error("complex has triangles; expected a graph")]
  NotAGraph,

  #[error("tree #{0} is not a maximal tree of the complex")]
  BadTree(usize),

  #[error("filtration stage {0} is not a weighted subcomplex of stage {1}")]
  NotNested(usize, usize),

  #[error("invariant factor {0} does not fit in 64 bits")]
  Overflow(String),

  #[error("stage {stage}: {source}")]
  AtStage {
    stage: usize,
    #[source]
    source: Box<Error>,
  },
}
