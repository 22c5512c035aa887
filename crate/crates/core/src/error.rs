use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    DisconnectedInput,
    #[error("graph has too few vertices")]
    TooSmall,
    #[error("pattern has {0} vertices; at most 12 supported")]
    PatternTooLarge(usize),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("a component is a cycle; suspended paths have no endpoints")]
    CycleComponent,
    #[error("invalid path system: {0}")]
    InvalidSystem(String),
    #[error("path system is inconsistent: {0}")]
    InconsistentInput(String),
    #[error("edge {0}-{1} is not persistent")]
    NonPersistentEdge(usize, usize),
    #[error("system is not neighborly")]
    NotNeighborly,
    #[error("not an induced subgraph")]
    NotInducedSubgraph,
    #[error("graph is not a cycle")]
    NotACycle,
    #[error("crossing condition fails at vertices {0} and {1}")]
    CrossingViolation(usize, usize),
    #[error("cycle length {0} is even")]
    EvenLength(usize),
    #[error("graph has {0} vertices, above the configured bound {1}")]
    TooLarge(usize, usize),
    #[error("weights do not strictly induce the system")]
    NotStrictlyInducing,
    #[error("quotient weights do not strictly induce the quotient system")]
    QuotientNotStrict,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("crossing function has an empty fiber over xy")]
    EmptyFiber,
    #[error("graph is not outerplanar")]
    NotOuterplanar,
    #[error("graph is not 2-connected")]
    NotBiconnected,
    #[error("corrupt catalog data: {0}")]
    CorruptData(String),
    #[error("resolution {0} too low")]
    ResolutionTooLow(usize),
    #[error("derivative is not positive at sample {0}")]
    NonPositiveDerivative(usize),
    #[error("resolutions differ: {0} vs {1}")]
    ResolutionMismatch(usize, usize),
    #[error("{0}")]
    Failed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
