use alloc::string::String;
use alloc::vec::Vec;

use crate::ideal::Ideal;

/// What went wrong while reading polynomial or rational text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("denominator zero")]
    DenominatorZero,
    #[error("number out of range")]
    NumberOutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The Frobenius-root chain did not settle within the allowed range of e.
    #[error("test ideal chain did not stabilize by e = {e_max}")]
    Inconclusive {
        e_max: u32,
        chain: Vec<(u32, Ideal)>,
    },
    #[error("no admissible jump candidate with denominator <= {cap}; retry with a larger cap")]
    CapExceeded { cap: String },
    #[error("jump verification failed at {0}")]
    JumpVerification(String),
}

impl Error {
    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn inconclusive(e_max: u32, chain: Vec<(u32, Ideal)>) -> Self {
        Error::Inconclusive { e_max, chain }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
