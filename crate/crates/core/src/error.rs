use thiserror::Error;

use crate::gauss::{ChordId, EndpointKind};

/// Problems found while reading a Gauss code.
///
/// Token indices are 1-based positions in the whitespace-separated token list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("token {index} `{token}`: expected `O<id><sign>` or `U<id>[sign]`")]
    Malformed { index: usize, token: String },
    #[error("token {index} `{token}`: chord {id} has two {kind} endpoints")]
    DuplicateEndpoint {
        index: usize,
        token: String,
        id: usize,
        kind: EndpointKind,
    },
    #[error("chord {id} has no {missing} endpoint")]
    MissingPartner { id: usize, missing: EndpointKind },
    #[error("token {index} `{token}`: sign disagrees with the other endpoint of chord {id}")]
    SignMismatch {
        index: usize,
        token: String,
        id: usize,
    },
    #[error("token {index} `{token}`: over endpoint of chord {id} needs a sign (`+`, `-` or `*`)")]
    MissingSign {
        index: usize,
        token: String,
        id: usize,
    },
    #[error("chord ids must be exactly 1..{count}; id {id} is out of range")]
    IdOutOfRange { id: usize, count: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: {source}")]
    Collection { line: usize, source: Box<Error> },
    #[error("line {line}: expected `name: gauss-code`")]
    CollectionSyntax { line: usize },
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("chord {0} is singular")]
    SingularChord(ChordId),
    #[error("chord {0} is not singular")]
    NotSingular(ChordId),
    #[error("gap {gap} out of range 0..={max}")]
    GapOutOfRange { gap: usize, max: usize },
    #[error("move does not apply: {0}")]
    InvalidMove(String),
    #[error("R3 configuration does not match the diagram")]
    StaleConfig,
    #[error("invariants built under different reduction policies")]
    PolicyMismatch,
    #[error("difference is not of crossing-change form: {0}")]
    NotHomotopyForm(String),
    #[error("malformed invariant: {0}")]
    MalformedInvariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
