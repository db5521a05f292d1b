use std::fmt;

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("rows do not form a square matrix")]
    NotSquare,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("resultant of two zero polynomials is undefined")]
    UndefinedResultant,

    #[error("duplicate interpolation node t = {0}")]
    DuplicateNode(String),

    #[error("interpolation needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("interpolated polynomial has degree {degree}, above the bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },

    #[error("interpolated coefficient of x^{index} is not an integer: {value}")]
    NonIntegerCoefficient { index: usize, value: String },

    #[error("graph6 parse error at byte {offset}: {kind}")]
    Graph6 { offset: usize, kind: Graph6ErrorKind },

    #[error("invalid matrix kind: {0}")]
    InvalidKind(String),

    #[error("built-in enumeration supports orders 1..=7, got {0}; pipe a graph6 stream instead")]
    OrderTooLarge(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("certification failed: {0}")]
    CertificationFailure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6ErrorKind {
    Empty,
    NonPrintable(u8),
    BadLength,
    Truncated,
    TrailingGarbage,
    NonZeroPadding,
    ZeroOrder,
}

impl fmt::Display for Graph6ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6ErrorKind::Empty => f.write_str("empty input"),
            Graph6ErrorKind::NonPrintable(b) => write!(f, "byte 0x{b:02x} outside 63..=126"),
            Graph6ErrorKind::BadLength => f.write_str("malformed order header"),
            Graph6ErrorKind::Truncated => f.write_str("adjacency data truncated"),
            Graph6ErrorKind::TrailingGarbage => f.write_str("trailing bytes after adjacency data"),
            Graph6ErrorKind::NonZeroPadding => f.write_str("non-zero padding bits"),
            Graph6ErrorKind::ZeroOrder => f.write_str("graphs must have at least one vertex"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
