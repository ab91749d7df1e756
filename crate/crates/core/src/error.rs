use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    ResourceCap,
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("relations are defined on different element lists")]
    ElementMismatch,
    #[error("empty sample-path space: no element starts an infinite path")]
    EmptyDomain,
    #[error("element `{0}` has no outgoing edge; restrict to the infinite domain first")]
    DomainViolation(String),
    #[error("not a path of the relation: no edge from position {0} to the next")]
    NotAWord(usize),
    #[error("matrix has dimension {found}, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("support mismatch at entry ({to}, {from}): {reason}")]
    SupportMismatch {
        from: String,
        to: String,
        reason: &'static str,
    },
    #[error("column `{column}` sums to {sum}, expected 1")]
    ColumnSum { column: String, sum: f64 },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("class is not terminal: {0}")]
    NotTerminal(String),
    #[error("distribution is not stationary (residual {0:e})")]
    NotStationary(f64),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid two-alphabet model: {0}")]
    InvalidModel(String),
    #[error("basic-set correspondence cross-check failed: {0}")]
    Correspondence(String),
    #[error("enumeration needs {required} cells, cap is {allowed}")]
    CapExceeded { required: u128, allowed: u128 },
    #[error("prefix too short: need {required} symbols, got {found}")]
    PrefixTooShort { required: usize, found: usize },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not a subdivision: {0}")]
    NotSubdivision(String),
    #[error("subdivision is not proper: edge {0} of K is not split")]
    Improper(String),
    #[error("degenerate vertex map on edge {0}: {1}")]
    Degenerate(String, String),
    #[error("vertex map is not simplicial on edge {0}: {1}")]
    NotSimplicial(String, String),
    #[error("point {0} lies outside the polyhedron")]
    OutsidePolyhedron(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::CapExceeded { .. } => ErrorKind::ResourceCap,
            Error::Numerical(_) | Error::NotStationary(_) | Error::Correspondence(_) => {
                ErrorKind::Numerical
            }
            _ => ErrorKind::Validation,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
