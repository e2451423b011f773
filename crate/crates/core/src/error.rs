use thiserror::Error;

use crate::map::Dart;

/// Errors raised by map construction, transformations and constructions.
///
/// Validation failures are never reported through this type; they end up in
/// a report's violation list instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed map: {0}")]
    Structural(String),

    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongDegree {
        vertex: usize,
        degree: usize,
        expected: &'static str,
    },

    #[error("dart {dart} does not arrive at a crossing (degree {degree})")]
    NotACrossing { dart: Dart, degree: usize },

    #[error("vertex {vertex} has unsupported degree {degree}")]
    UnsupportedDegree { vertex: usize, degree: usize },

    #[error("smoothing vertex {0} would leave a free loop")]
    DegenerateSmoothing(usize),

    #[error("graph is disconnected: vertex {0} lies in a second component")]
    Disconnected(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("counterexample found: {0}")]
    Counterexample(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
