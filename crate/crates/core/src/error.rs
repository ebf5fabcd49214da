use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A 1-based node label outside `1..=n`.
    NodeOutOfRange { label: usize, n: usize },
    DuplicateEdge { u: usize, v: usize },
    /// Self-edge supplied while the graph does not allow them. 1-based label.
    SelfEdge { node: usize },
    /// `D^{-1/2}` is undefined for an isolated node. 1-based label.
    ZeroDegree { node: usize },
    NotSymmetric { row: usize, col: usize, diff: f64 },
    DimensionMismatch { expected: usize, found: usize },
    InvalidParameter { name: &'static str, reason: String },
    /// The relative IPR gap divides by the minimum, which is zero.
    UndefinedRelativeGap,
    EmptyInput(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NodeOutOfRange { label, n } => {
                write!(f, "node {label} out of range 1..={n}")
            }
            Error::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u}, {v})"),
            Error::SelfEdge { node } => {
                write!(f, "self-edge at node {node} but self-edges are disabled")
            }
            Error::ZeroDegree { node } => write!(
                f,
                "node {node} has degree 0; the normalized Laplacian is undefined"
            ),
            Error::NotSymmetric { row, col, diff } => {
                write!(f, "matrix not symmetric at ({row}, {col}): |a_ij - a_ji| = {diff:e}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::UndefinedRelativeGap => {
                write!(f, "relative IPR gap undefined: minimum long-time IPR is 0")
            }
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
