use thiserror::Error;

/// Errors raised by the toolkit. Most constructors validate their inputs and
/// report the first violated invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("invalid probabilities: {0}")]
    Probability(String),
    #[error("basis is not orthonormal (overlap {0:.3e})")]
    NotOrthonormal(f64),
    #[error("invalid channel: {0}")]
    Channel(String),
    #[error("POVM is incomplete (deviation {0:.3e})")]
    Povm(f64),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("arithmetic overflow in exact solver")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
