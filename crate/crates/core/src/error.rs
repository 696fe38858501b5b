use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph order {n} exceeds the supported maximum of {max}")]
    OrderTooLarge { n: usize, max: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex sets overlap on {0:?}")]
    OverlappingSets(Vec<usize>),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("line {line}: {cause}")]
    Line { line: usize, cause: Box<Error> },

    #[error("graph already contains F_{k} (center {center})")]
    ContainsFan { k: usize, center: usize },

    #[error("invalid matrix: {0}")]
    Matrix(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("construction self-check failed: {0}")]
    SelfCheck(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
