use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inadmissible generator: e_0 does not exist (classical index must be >= 1)")]
    ClassicalIndexZero,
    #[error("inadmissible generator: mbar_{{0,1}} is excluded (need i + j >= 2)")]
    TwistedBelowRange,
    #[error("inadmissible generator: twisted class with j = 0 (use e_{{i-1}} instead)")]
    TwistedWeightZero,
    #[error("inadmissible generator: negative index {0}")]
    NegativeIndex(i64),
    #[error("bidegree mismatch: expected {expected}, found a term of bidegree {found}")]
    BidegreeMismatch { expected: String, found: String },
    #[error("inhomogeneous input")]
    Inhomogeneous,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parity violation: degree {degree} is not allowed for d = {d} ({what})")]
    Parity { d: u32, degree: u32, what: &'static str },
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("vector is not in the kernel")]
    NotInKernel,
    #[error("witness search exceeded degree cap {0}")]
    WitnessCap(u32),
    #[error("inhomogeneous relation #{0}")]
    InhomogeneousRelation(usize),
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("invalid module spec: {0}")]
    Spec(String),
    #[error("unknown {what}: {name}")]
    Unknown { what: &'static str, name: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Spec(e.to_string())
    }
}
