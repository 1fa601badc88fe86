use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no non-equivariant limit: {0} has a pole at s = 0")]
    NoNonEquivariantLimit(String),
    #[error("non-simple pole at z = {0}")]
    NonSimplePole(String),
    #[error("pole at nilpotent location: {0}")]
    NilpotentPole(String),
    #[error("denominator factor vanishes at the evaluation point: {0}")]
    VanishingFactor(String),
    #[error("zero factor in denominator: {0}")]
    ZeroFactor(String),
    #[error("non-regular chamber point: {0}")]
    NonRegularChamber(String),
    #[error("singular fixed point: orbifold case unsupported ({0})")]
    SingularFixedPoint(String),
    #[error("lambda line is not generic: {0}; try a different lambda line")]
    NonGenericLine(String),
    #[error("invalid geometry: {0}")]
    Spec(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("basis of derivatives degenerate at this point: {0}")]
    Degenerate(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
