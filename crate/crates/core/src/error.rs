use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} out of range for ground set of size {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("ground set size {n} exceeds the supported maximum {max}")]
    GroundSetTooLarge { n: usize, max: usize },
    #[error("family is not a topology: {0}")]
    NotATopology(String),
    #[error("map is not continuous: preimage of {0} is not open")]
    NotContinuous(String),
    #[error("map endpoints do not match the given spaces")]
    EndpointMismatch,
    #[error("set is not open")]
    NotOpen,
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("frequency basis rejected: {0}")]
    BadBasis(String),
    #[error("frequency bases do not match")]
    BasisMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
