//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::exactla::NoSolution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("label collision: {0}")]
    LabelCollision(String),
    #[error("vertex {0} is neither a sink nor a source in the requested direction")]
    NotSinkOrSource(String),
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("arrow ideal not nilpotent within bound {0}")]
    NotNilpotent(usize),
    #[error("characteristic {p} too small for dimension {dim}")]
    CharTooSmall { p: u64, dim: usize },
    #[error("algebra axioms fail: {0}")]
    NotAnAlgebra(String),
    #[error("module axioms fail: {0}")]
    NotAModule(String),
    #[error("module is not projective")]
    NotProjective,
    #[error("elements do not generate the module")]
    NotGenerating,
    #[error("bimodule on arrow {0} is not projective as a left module")]
    NotProjectiveLeft(String),
    #[error("bimodule on arrow {0} is not projective as a right module")]
    NotProjectiveRight(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bimodule on arrow {0} is not free on both sides")]
    NotLocallyFree(String),
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("quiver is infinite")]
    InfiniteQuiver,
    #[error("representation is not locally projective")]
    NotLocallyProjective,
    #[error("vertex algebra at {0} is not {1}-Iwanaga-Gorenstein")]
    NotLocallyGorenstein(String, usize),
    #[error("vertex algebra at {0} is not selfinjective")]
    NotLocallySelfinjective(String),
    #[error("pro-species is not dualisable at arrow {0}")]
    NotDualisable(String),
    #[error("preprojective algebra not certified finite dimensional")]
    NotFiniteDimensional,
    #[error("module is not annihilated by the preprojective relation")]
    NotPiModule,
    #[error("image of the in-map at {0} is not a direct summand")]
    NotSplit(String),
    #[error("quiver is not bipartite")]
    NotBipartite,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
}

impl From<NoSolution> for Error {
    fn from(_: NoSolution) -> Error {
        Error::NoSolution
    }
}

pub type Result<T> = std::result::Result<T, Error>;
