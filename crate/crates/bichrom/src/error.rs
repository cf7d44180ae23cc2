//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by graph operations, counting functions, and polynomial
/// recovery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no such vertex: {0}")]
    NoSuchVertex(String),
    #[error("no such edge: {{{0}, {1}}}")]
    NoSuchEdge(String, String),
    #[error("no such arc: {0} -> {1}")]
    NoSuchArc(String, String),
    /// The threshold `y` must not exceed the palette size `x`.
    #[error("threshold exceeds palette: y = {y} > x = {x}")]
    ThresholdExceedsPalette { x: u64, y: u64 },
    /// Weak order preserving maps are only counted for thresholds `y >= 1`.
    #[error("weak map threshold must be at least 1, got y = {0}")]
    WeakThresholdTooSmall(u64),
    /// The exhaustive oracle refuses graphs past its configured size.
    #[error("oracle interpolation limit: {n} vertices exceeds bound {bound}")]
    InterpolationLimit { n: usize, bound: usize },
    /// Generic size guard for the enumeration-backed computations.
    #[error("bound exceeded: {what} has {n} elements, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        n: usize,
        bound: usize,
    },
    /// The undirected specialization requires an empty arc set.
    #[error("graph has arcs; the undirected decomposition requires A to be empty")]
    HasArcs,
    /// Programmatic construction rejected the vertex/edge/arc data.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    /// Malformed polynomial JSON.
    #[error("invalid polynomial JSON: {0}")]
    PolyJson(String),
}

/// A parse failure for the graph text format, with a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}
