use thiserror::Error;

/// What went wrong while reading a graph from text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedHeader,
    MalformedEdge,
    VertexOutOfRange { vertex: usize, n: usize },
    DuplicateEdge { u: usize, v: usize },
    SelfLoop { vertex: usize },
    InvalidByte { byte: u8 },
    Truncated,
    TrailingData,
    Empty,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseErrorKind::MalformedHeader => write!(f, "malformed header"),
            ParseErrorKind::MalformedEdge => write!(f, "malformed edge line, expected \"u v\""),
            ParseErrorKind::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for {n} vertices")
            }
            ParseErrorKind::DuplicateEdge { u, v } => write!(f, "duplicate edge {u}-{v}"),
            ParseErrorKind::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            ParseErrorKind::InvalidByte { byte } => write!(f, "invalid graph6 byte 0x{byte:02x}"),
            ParseErrorKind::Truncated => write!(f, "unexpected end of input"),
            ParseErrorKind::TrailingData => write!(f, "trailing data after graph"),
            ParseErrorKind::Empty => write!(f, "no graph found"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// `line` is 1-based; `column` is the 1-based byte offset within the line.
    #[error("parse error at line {line}, byte {column}: {kind}")]
    Parse {
        line: usize,
        column: usize,
        kind: ParseErrorKind,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid degree range: need 1 <= delta <= Delta, got ({min}, {max})")]
    InvalidRange { min: u32, max: u32 },
    #[error("degree range must satisfy Delta > delta, got delta = Delta = {0}")]
    DegenerateRange(u32),
    #[error("vertex {0} is isolated; bound machinery needs every degree >= 1")]
    IsolatedVertex(usize),
    #[error("vertex {vertex} has degree {degree}, outside [{min}, {max}]")]
    DegreeOutOfRange {
        vertex: usize,
        degree: u32,
        min: u32,
        max: u32,
    },
    #[error("kernel {kernel} is not defined at degree {degree}")]
    KernelDomain { kernel: String, degree: u32 },
    #[error("unknown kernel {0:?}")]
    UnknownKernel(String),
    #[error("invalid kernel table: {0}")]
    InvalidTable(String),
    #[error("exponent must be finite, got {0}")]
    InvalidAlpha(f64),
    #[error("coordinates must be positive, got ({0}, {1})")]
    NonPositiveCoordinate(f64, f64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("exhaustive search is capped at {cap} vertices, got {n}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
