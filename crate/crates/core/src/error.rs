use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which residual could not be inferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `a\c`, the maximum of `{b : a;b <= c}`.
    Left,
    /// `c/b`, the maximum of `{a : a;b <= c}`.
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

/// The candidate set for a residual was empty or had no maximum.
///
/// For [`Side::Left`] the residual sought is `operand\bound`; for
/// [`Side::Right`] it is `bound/operand`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no {side} residual for operand {operand} and bound {bound}: candidates {candidates:?} have no maximum")]
pub struct NoResidual {
    pub operand: usize,
    pub bound: usize,
    pub side: Side,
    pub candidates: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownElement(String),
    MissingEntry(String),
    DuplicateEntry(String),
    NoElements,
    Residual(NoResidual),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {}", describe(.kind))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Syntax(msg) => format!("syntax error: {msg}"),
        ParseErrorKind::UnknownElement(name) => format!("unknown element `{name}`"),
        ParseErrorKind::MissingEntry(what) => format!("missing table entry {what}"),
        ParseErrorKind::DuplicateEntry(what) => format!("duplicate table entry {what}"),
        ParseErrorKind::NoElements => "the carrier must be nonempty".to_string(),
        ParseErrorKind::Residual(e) => format!("residual inference failed: {e}"),
    }
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    NoResidual(#[from] NoResidual),
    #[error("enumeration of {n}-element algebras exceeds the configured cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("closure exceeded the cap of {cap} relations")]
    ClosureCap { cap: usize },
    #[error("quantale law `{law}` fails at {witness:?}")]
    QuantaleLaw { law: &'static str, witness: Vec<usize> },
    #[error("embedding fails to preserve {clause} at ({a}, {b})")]
    Embedding { clause: &'static str, a: usize, b: usize },
    #[error("relations over bases of size {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("node budget of {budget} exhausted")]
    ResourceLimit { budget: u64 },
    #[error("{0}")]
    Invalid(String),
}
