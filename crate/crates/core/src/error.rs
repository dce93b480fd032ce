use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field order {0}: must be a prime power >= 2")]
    InvalidFieldOrder(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("polynomial is zero {0}")]
    ZeroPolynomial(String),
    #[error("precision exhausted (needed {needed}, available {available})")]
    PrecisionExhausted { needed: i64, available: i64 },
    #[error("matrix is not invertible")]
    Singular,
    #[error("invalid group spec: {0}")]
    InvalidGroup(String),
    #[error("degree bound {given} is below the certified bound {certified}")]
    BoundNotCertified { given: usize, certified: usize },
    #[error("quotient graph core is disconnected ({0} components)")]
    DisconnectedCore(usize),
    #[error("depth cap {0} exceeded before every branch was certified as a cusp ray")]
    DepthCapExceeded(usize),
    #[error("weighted level: {0}")]
    Weighted(String),
    #[error("incompatible levels: {0}")]
    IncompatibleLevels(String),
    #[error("operator precondition violated: {0}")]
    Precondition(String),
    #[error("linear solve failed: {0}")]
    SolveFailed(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidFieldOrder(_) => "InvalidFieldOrder",
            Error::Parse(_) => "Parse",
            Error::Dimension(_) => "Dimension",
            Error::NotSquare { .. } => "NotSquare",
            Error::ZeroPolynomial(_) => "ZeroPolynomial",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::Singular => "Singular",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::BoundNotCertified { .. } => "BoundNotCertified",
            Error::DisconnectedCore(_) => "DisconnectedCore",
            Error::DepthCapExceeded(_) => "DepthCapExceeded",
            Error::Weighted(_) => "Weighted",
            Error::IncompatibleLevels(_) => "IncompatibleLevels",
            Error::Precondition(_) => "Precondition",
            Error::SolveFailed(_) => "SolveFailed",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
