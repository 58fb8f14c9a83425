use thiserror::Error;

/// Errors produced by space construction, constructions and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {0:?} does not converge to itself (centering violated)")]
    CenteringViolation(String),

    #[error("unknown point {0:?}")]
    UnknownPoint(String),

    #[error("duplicate point {0:?}")]
    DuplicatePoint(String),

    #[error("no limit set stored for filter generated by {0}")]
    UnknownFilter(String),

    #[error("limit structure is not monotone at generator {0}")]
    NotMonotone(String),

    #[error("malformed edge: {0}")]
    MalformedEdge(String),

    #[error("hyperedge {0} is empty")]
    EmptyHyperedge(usize),

    #[error("distance matrix is not symmetric at ({0}, {1})")]
    AsymmetricMatrix(usize, usize),

    #[error("negative or invalid distance at ({0}, {1})")]
    NegativeDistance(usize, usize),

    #[error("distance matrix has non-zero diagonal at {0}")]
    NonZeroDiagonal(usize),

    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("operation requires point-limit spaces")]
    KindMismatch,

    #[error("classes do not partition the carrier: {0}")]
    NotAPartition(String),

    #[error("exponential too large: {size} maps exceeds cap {cap}")]
    ExponentialTooLarge { size: u128, cap: u128 },

    #[error("map is not continuous: {0}")]
    NotContinuous(String),

    #[error("maps do not share domain and codomain")]
    DomainMismatch,

    #[error("homotopy ends do not match")]
    EndMismatch,

    #[error("map is not an embedding: {0}")]
    NotEmbedding(String),

    #[error("map is not injective")]
    NotInjective,

    #[error("search exceeded its budget of {budget} nodes")]
    SearchSpaceTooLarge { budget: u64 },

    #[error("incompatible data: {0}")]
    IncompatibleData(String),

    #[error("not a loop: {0}")]
    NotALoop(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("not a covering system: point {0} is not covered")]
    NotACoveringSystem(String),

    #[error("attaching map is not continuous: {0}")]
    NotContinuousAttachment(String),

    #[error("carrier too large for this representation: {0} points")]
    CarrierTooLarge(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by a search or enumeration bound rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::ExponentialTooLarge { .. }
                | Error::SearchSpaceTooLarge { .. }
                | Error::BudgetExhausted(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
