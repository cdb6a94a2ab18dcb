use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph has {n} vertices, operation requires at least {required}")]
    TooFewVertices { n: usize, required: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(u32),

    #[error("graph has no edges")]
    Edgeless,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("outside the formula's regime: {0}")]
    OutOfRegime(String),

    #[error("oracle guard: n = {n} exceeds the enumeration limit {limit}")]
    OracleTooLarge { n: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
