use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid descriptor `{0}`")]
    InvalidDescriptor(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range (arity {arity})")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("boundary composition is nonzero at degree {degree}")]
    CompositionFailure { degree: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid homomorphism: {0}")]
    Homomorphism(String),
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error("wrong group: {0}")]
    WrongGroup(String),
    #[error("complex is not minimal; nonzero specialized entries: {0}")]
    MinimalityViolation(String),
    #[error("complex carries no integral shadow")]
    MissingShadow,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("characteristic mismatch: {0}")]
    CharacteristicMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
