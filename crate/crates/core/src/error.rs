use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid loop pairing: {0}")]
    InvalidLoop(String),
    #[error("duplicate free label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("empty graph is not allowed as an operand of {0}")]
    EmptyOperand(&'static str),
    #[error("{0} requires loop-free operands")]
    LoopBearing(&'static str),
    #[error("contraction position {pos} out of range for {free} free leaves")]
    PositionOutOfRange { pos: usize, free: usize },
    #[error("label collision after shift: `{0}`")]
    LabelCollision(String),
    #[error("{what}: estimated size {size} exceeds the work limit {limit}")]
    ResourceLimit { what: String, size: u128, limit: u128 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient truncation: order {0} does not reach the residue term")]
    InsufficientTruncation(i64),
    #[error("identical variable names `{0}`")]
    IdenticalVariables(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("not an EO graph: {0}")]
    NotEoGraph(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
