use crate::model::Violation;
use crate::engine::RegularityViolation;

/// Errors raised by casebase construction, mining and document handling.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("component {index} is a {found} component but the comparator expects {expected}")]
    KindMismatch {
        index: usize,
        expected: &'static str,
        found: &'static str,
    },

    #[error("component index {index} out of bounds for characterisation of arity {arity}")]
    ComponentOutOfBounds { index: usize, arity: usize },

    #[error("order index {index} out of bounds for a preference sequence of length {len}")]
    OrderOutOfBounds { index: usize, len: usize },

    #[error("preference sequence must contain at least one order")]
    EmptyPreferences,

    #[error("component {0} is referenced by more than one order")]
    DuplicateOrderComponent(usize),

    #[error("unknown component name `{0}`")]
    UnknownComponent(String),

    #[error("unknown outcome name `{0}`")]
    UnknownOutcome(String),

    #[error("duplicate case id `{0}`")]
    DuplicateId(String),

    #[error("casebase is invalid: {}", join(.0))]
    Invalid(Vec<Violation>),

    #[error("casebase is not regular: {}", join(.0))]
    NotRegular(Vec<RegularityViolation>),

    #[error("only the regular variant is supported")]
    IrregularUnsupported,

    #[error("{variant} requires {requirement}")]
    UnsupportedSchema {
        variant: &'static str,
        requirement: &'static str,
    },

    #[error("frameworks have different argument sets")]
    ArgumentMismatch,

    #[error("attack endpoint {0} is not an argument of the framework")]
    UnknownArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("confusion matrix is empty")]
    EmptyConfusion,

    #[error("{0}")]
    InvalidArgument(String),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
