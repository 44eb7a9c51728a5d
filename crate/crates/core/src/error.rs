use std::fmt;

use thiserror::Error;

/// What went wrong while reading a graph or CNF file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedHeader(String),
    UnexpectedEof(&'static str),
    InvalidToken(String),
    VertexOutOfRange { vertex: u64, n: usize },
    ColorOutOfRange { color: u64, k: usize },
    MissingColor(usize),
    SelfLoop(u64),
    DuplicateEdge(u64, u64),
    TrailingData(String),
    VariableOutOfRange { var: u64, declared: usize },
    ClauseCount { declared: usize, found: usize },
    TooLarge { vertices: u64, limit: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            MalformedHeader(s) => write!(f, "malformed header: {s}"),
            UnexpectedEof(what) => write!(f, "unexpected end of input while reading {what}"),
            InvalidToken(t) => write!(f, "invalid token {t:?}"),
            VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range (n = {n})")
            }
            ColorOutOfRange { color, k } => write!(f, "color {color} out of range (k = {k})"),
            MissingColor(c) => write!(f, "color {c} is declared but never used"),
            SelfLoop(v) => write!(f, "self-loop on vertex {v}"),
            DuplicateEdge(u, v) => write!(f, "duplicate edge {u} {v}"),
            TrailingData(t) => write!(f, "unexpected trailing data {t:?}"),
            VariableOutOfRange { var, declared } => {
                write!(f, "variable {var} out of declared range 1..={declared}")
            }
            ClauseCount { declared, found } => {
                write!(
                    f,
                    "header declares {declared} clauses but {found} were found"
                )
            }
            TooLarge { vertices, limit } => {
                write!(f, "input would produce {vertices} vertices (limit {limit})")
            }
        }
    }
}

/// A parse failure, tagged with the 1-based line where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("size mismatch: expected {expected} vertices, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration bound exceeded: n = {n} > {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
