use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix size must be at least 2, got {0}")]
    InvalidMatrixSize(usize),

    #[error("exponents q = t^{q_pow}, z = t^{z_pow} violate z^{n} = q^-1")]
    InvalidExponents { q_pow: i64, z_pow: i64, n: usize },

    #[error("generator index ({row}, {col}) out of range for N = {n}")]
    IndexOutOfRange { row: usize, col: usize, n: usize },

    #[error("elements belong to different contexts (N = {0} vs N = {1})")]
    ContextMismatch(usize, usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed letter alphabets: expected pure r-words against pure l-words")]
    MixedAlphabet,

    #[error("element is not in the image of theta (fails the coinvariance test)")]
    NotInB,

    #[error("operation is defined on single generators only")]
    NonGenerator,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
