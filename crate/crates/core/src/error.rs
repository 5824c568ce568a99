use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("element {0} is not in the carrier")]
    NotInCarrier(String),
    #[error("{op} expects {expected} argument(s), got {got}")]
    Arity {
        op: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("cannot mix finite and symbolic data: {0}")]
    MixedRegimes(String),
    #[error("exhaustive mode needs a finite carrier")]
    InfiniteCarrier,
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("generating set is empty")]
    EmptyGenerators,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("algebra is not perfect")]
    NotPerfect,
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("arrows do not compose: {0}")]
    Mismatch(String),
    #[error("square does not commute")]
    NotCommuting,
    #[error("square is not a regular pushout: {0}")]
    NotRegularPushout(String),
    #[error("unsupported in the symbolic regime: {0}")]
    Unsupported(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
