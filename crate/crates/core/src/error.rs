use thiserror::Error;

/// Crate-wide error type. Variants are shared across modules so callers can
/// match on the failure kind without caring which layer raised it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vector must be nonnegative with at least one positive entry")]
    ZeroVector,

    #[error("game too large to enumerate: {rows}x{cols} exceeds support bound {bound}")]
    TooLarge {
        rows: usize,
        cols: usize,
        bound: usize,
    },

    #[error("symmetric part of the matrix has rank greater than one")]
    RankExceedsOne,

    #[error("fixed-point search did not converge: {0}")]
    FixedPointNotFound(String),

    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),

    #[error("profile is not a Nash equilibrium")]
    NotAnEquilibrium,

    #[error("strategy does not have full support")]
    NotFullSupport,

    #[error("game is degenerate: the equilibrium set is not finite")]
    DegenerateGame,

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),

    #[error("primary outcome passed to second-stage optimization is not optimal")]
    PrimaryNotOptimal,

    #[error("matrix entries must all be positive")]
    NonPositiveMatrix,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
