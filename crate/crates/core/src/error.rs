use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input matrix is not square (row `row` has `len` entries, expected `n`).
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("matrix must have at least one row")]
    Empty,

    /// `|raw[i][j] - raw[j][i]|` exceeds the symmetry tolerance (1-based cell).
    #[error("asymmetric entry at ({i}, {j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },

    #[error("entry at ({i}, {j}) = {value} is outside [0, 1]")]
    OutOfRange { i: usize, j: usize, value: f64 },

    #[error("entry at ({i}, {j}) = {value} is not binary")]
    NotBinary { i: usize, j: usize, value: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cell ({i}, {j}) is outside the upper triangle of a {n}x{n} matrix")]
    InvalidCell { i: usize, j: usize, n: usize },

    #[error("not a permutation of 1..={n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    #[error("threshold must be positive and finite, got {0}")]
    InvalidThreshold(f64),

    /// A threshold formula was evaluated at a zero deviation (matrix already Robinson).
    #[error("threshold undefined for gamma1 = 0")]
    ZeroGamma,

    #[error("size {n} exceeds the limit {max} for {what}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("matrix is not Robinson")]
    NotRobinson,

    #[error("malformed layering: {0}")]
    MalformedLayering(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    /// An internal guarantee failed. Signals a bug, never bad input.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
