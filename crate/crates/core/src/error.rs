use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid outcome space: {0}")]
    InvalidOutcomeSpace(String),
    #[error("invalid marginal: {0}")]
    InvalidMarginal(String),
    #[error("dimension mismatch: expected {expected} outcomes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid process: {0}")]
    InvalidDgp(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("sample is empty")]
    EmptySample,
    #[error("outcome index {index} out of range for {d} outcomes")]
    OutcomeOutOfRange { index: usize, d: usize },
    #[error("horizon too large: {size} exceeds the cap of {cap}")]
    HorizonTooLarge { size: usize, cap: usize },
    #[error("invalid act: {0}")]
    InvalidAct(String),
    #[error("invalid decision problem: {0}")]
    InvalidProblem(String),
    #[error("the family has no members")]
    EmptyFamily,
    #[error("covariance matrix is singular")]
    SingularCovariance,
    #[error("every candidate assigns zero likelihood to the data")]
    ZeroEvidence,
    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("contamination weight is 1: every structural parameter is compatible")]
    DeltaOne,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no witness found within a budget of {0} problems")]
    WitnessNotFound(usize),
    #[error("linear program failed: {0}")]
    Lp(String),
}
