use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: u32, max: u32 },

    #[error("the zero vector has no hyperbolic complement")]
    ZeroVector,

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("the pairing is degenerate on this subspace")]
    DegenerateSubspace,

    #[error("line bundle classes of different kinds or models: {0}")]
    KindMismatch(String),

    #[error("class of odd degree {degree} has no square root")]
    OddDegree { degree: i64 },

    #[error("class is not halvable inside the model: {0}")]
    NotHalvable(String),

    #[error("subset size {subset} has the wrong parity for r = {r}")]
    ParityViolation { subset: u32, r: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inexact division in closed-form count: {0}")]
    InexactDivision(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("sampling gave up after {attempts} attempts (try a larger modulus)")]
    SamplingExhausted { attempts: u32 },
}

impl Error {
    /// Errors raised because a curve model was set up inconsistently.
    pub fn is_model_error(&self) -> bool {
        matches!(
            self,
            Error::NotHalvable(_)
                | Error::OddDegree { .. }
                | Error::KindMismatch(_)
                | Error::SamplingExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
