use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("substitution is not primitive")]
    NonPrimitive,

    #[error("no power of the substitution up to {0} has a letter a with image starting with a")]
    NoSeedLetter(usize),

    #[error("length {requested} exceeds the language horizon {horizon}")]
    HorizonExceeded { requested: usize, horizon: usize },

    #[error("'{0}' is not a factor of the language")]
    NotAFactor(String),

    #[error("central labels are only defined on even orders (got order {0})")]
    OddOrder(usize),

    #[error("cannot map order {from} onto order {to}")]
    OrderMismatch { from: usize, to: usize },

    #[error("window '{window}' at offset {offset} is not in the language")]
    NotAdmissible { window: String, offset: usize },

    #[error("traced word '{traced}' does not run from '{start}' to '{end}'")]
    EndpointMismatch {
        traced: String,
        start: String,
        end: String,
    },

    #[error("return words of '{word}' did not stabilize within a scan of {budget} letters")]
    Incomplete { word: String, budget: usize },

    #[error("delayed return words need both halves nonempty")]
    EmptySplit,

    #[error("'{0}' is not an edge of the graph")]
    UnknownEdge(String),

    #[error("path is not a loop at the base vertex")]
    NotALoop,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("base vertex '{found}' is not the projection '{expected}'")]
    BaseMismatch { expected: String, found: String },

    #[error("extension graph of '{0}' has no vertices")]
    EmptyGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;
