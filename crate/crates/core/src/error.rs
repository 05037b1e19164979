use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid sampler: {0}")]
    InvalidSampler(String),

    #[error("point lies outside the sampler domain")]
    OutsideDomain,

    #[error("rejection sampler acceptance rate {rate:.3e} fell below the cap after {tried} proposals")]
    RejectionCap { rate: f64, tried: u64 },

    #[error("samples {first} and {second} share coordinate {coord}; ties are not supported")]
    DuplicateCoordinate { first: usize, second: usize, coord: usize },

    #[error("mode lies outside the shape domain")]
    ModeOutsideDomain,

    #[error("shape constraint set does not match the sample batch: {0}")]
    IndexMismatch(String),

    #[error("discrete values violate the shape constraints by {violation:.3e}")]
    ShapeViolation { violation: f64 },

    #[error("multiplier {index} must be non-negative, got {value}")]
    SignViolation { index: usize, value: f64 },

    #[error("invalid linear program: {0}")]
    InvalidModel(String),

    #[error("invalid calibration input: {0}")]
    Calibration(String),

    #[error("no sample fell in the annulus; retry with a larger n")]
    EmptyAnnulus,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
