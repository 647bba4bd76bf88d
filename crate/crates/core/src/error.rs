use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("unknown ray `{0}`")]
    UnknownRay(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("invalid vertex label for `{0}`: multiplicity must be at least 1")]
    BadMultiplicity(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has a loop at edge {0}; resolve loops first")]
    LoopPresent(usize),
    #[error("position {pos} is outside the open interval (0, {length}) of edge {edge}")]
    PositionOutOfRange {
        edge: usize,
        pos: String,
        length: String,
    },
    #[error("edge {0} does not carry its model-metric length")]
    NotModelEdge(usize),
    #[error("graph is not reduced: vertex `{0}` has multiplicity > 1")]
    NonReduced(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: String, found: String },
    #[error("invalid piecewise-linear function: {0}")]
    InvalidFunction(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("ray `{0}` has negative slope; the minimum is not attained")]
    NegativeRaySlope(String),
    #[error("missing model data: {0}")]
    MissingData(String),
    #[error("edge {0} meets the horizontal divisor; refine the model first")]
    HorizontalEdge(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
