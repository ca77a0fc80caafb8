use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no vertices")]
    Empty,

    #[error("invalid voltage graph: {0}")]
    InvalidVoltageGraph(String),

    /// The finite cover built from a voltage graph would contain a loop or a
    /// parallel edge.
    #[error("cover is not simple: {0}")]
    NonSimpleCover(String),

    #[error("integer overflow while counting cycles of length {0}")]
    CountOverflow(usize),

    #[error("matrix has entry with nonzero imaginary part at ({0}, {1})")]
    NonRealMatrix(usize, usize),

    /// Evaluation at a zero of the reciprocal zeta function.
    #[error("pole: {factor} vanishes (value {value})")]
    Pole { factor: String, value: Complex64 },

    /// A fiber eigenvalue left the disk |z - 1| < 1 on which the principal
    /// logarithm is used.
    #[error("branch violation at theta = {theta:?}: eigenvalue {eigenvalue} is outside |z - 1| < 1")]
    BranchViolation { theta: Vec<f64>, eigenvalue: Complex64 },

    #[error("eigenvalue solver failed: {0}")]
    Eigen(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Domain errors come from evaluating a well-formed request outside the
    /// region where the quantity is defined, as opposed to malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(self, Error::Pole { .. } | Error::BranchViolation { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Loop(_) => "loop",
            Error::DuplicateEdge(..) => "duplicate_edge",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::Disconnected => "disconnected",
            Error::Empty => "empty",
            Error::InvalidVoltageGraph(_) => "invalid_voltage_graph",
            Error::NonSimpleCover(_) => "non_simple_cover",
            Error::CountOverflow(_) => "count_overflow",
            Error::NonRealMatrix(..) => "non_real_matrix",
            Error::Pole { .. } => "pole",
            Error::BranchViolation { .. } => "branch_violation",
            Error::Eigen(_) => "eigen",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
