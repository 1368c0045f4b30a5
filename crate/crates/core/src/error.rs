use thiserror::Error;

/// Errors for every fallible operation in the crate. Guard violations name the
/// guard and the offending value so CLI diagnostics can be pasted into bug
/// reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector length {0} is below the minimum of 2")]
    VectorTooShort(usize),

    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("matrix entry {value} at row {row}, column {col} is outside the {kind} domain")]
    EntryOutsideDomain {
        value: i64,
        row: usize,
        col: usize,
        kind: &'static str,
    },

    #[error("matrix must have at least one row")]
    EmptyMatrix,

    #[error("integer overflow during exact arithmetic")]
    Overflow,

    #[error("guard violated: {guard} requires {requirement}, got {got}")]
    GuardViolated {
        guard: &'static str,
        requirement: &'static str,
        got: String,
    },

    #[error("the zero vector has no annihilator census")]
    ZeroVector,

    #[error("empty domain: grid bound 0 admits no nonzero vectors")]
    EmptyDomain,

    #[error("entry {value} exceeds the grid bound {bound}")]
    GridBoundExceeded { value: i64, bound: i64 },

    #[error("bit stream ended inside a code word")]
    Truncated,

    #[error("opcode 111 is not assigned")]
    InvalidOpcode,

    #[error("index {index} is out of range for ambient length {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("walsh opcode is invalid: {n} is not a power of two")]
    WalshUnavailable { n: usize },

    #[error("integer payload wider than 63 bits")]
    IntTooWide,

    #[error("program nesting exceeds the decoder limit")]
    NestingTooDeep,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("trailing garbage after {context}")]
    TrailingGarbage { context: &'static str },

    #[error("matrix is not Hadamard: rows are not pairwise orthogonal with norm n")]
    NotHadamard,

    #[error(
        "sequency tie: sign-change counts are not a permutation of 0..n (non-Sylvester input)"
    )]
    SequencyTie,

    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
