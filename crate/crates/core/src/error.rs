use thiserror::Error;

/// Errors raised by the crystal and identity routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operator index {index} out of range for rank n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected n = {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("letter {letter} is not in [1, {n}]")]
    LetterOutOfRange { letter: u32, n: usize },

    #[error("malformed {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<i64>),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("tableau is not semistandard: {0}")]
    NotSemistandard(String),

    #[error("weight {0:?} is not in the orbit of {1:?}")]
    NotInOrbit(Vec<i64>, Vec<i64>),

    #[error("directions are not strictly decreasing in the orbit order at position {0}")]
    UnorderedDirections(usize),

    #[error("cut points must strictly increase from 0 to 1")]
    BadCuts,

    #[error("no {cut}-chain joins directions {from:?} and {to:?}")]
    MissingChain {
        cut: String,
        from: Vec<i64>,
        to: Vec<i64>,
    },

    #[error("{0} is not a minimal coset representative")]
    NotMinimalRep(String),

    #[error("shape or class mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unsorted biword at position {0}")]
    UnsortedBiword(usize),

    #[error("matrix is not lower triangular (entry ({0}, {1}) is nonzero)")]
    NotLowerTriangular(usize, usize),

    #[error("negative matrix entry at ({0}, {1})")]
    NegativeEntry(usize, usize),

    #[error("iteration budget of {budget} steps exhausted; partial state: {state}")]
    BudgetExhausted { budget: u64, state: String },

    /// A consistency check that the underlying theory guarantees has failed.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
