use thiserror::Error;

use crate::graph::VertexId;
use crate::matrixtree::SpanningTreeReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid root parameter (order {order}, power {power}): {reason}")]
    InvalidParam {
        order: u64,
        power: u64,
        reason: &'static str,
    },

    #[error("sigma_{q} is not an automorphism of Q(zeta_{order}): gcd({q}, {order}) != 1")]
    NotCoprime { q: i64, order: u32 },

    #[error("{value} is not an exact integer power of {base}")]
    NotAPower { value: String, base: u64 },

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("value does not lie in Q(sqrt 5): {0}")]
    NotInSubfield(String),

    #[error("edge {tail} -> {head} is a loop")]
    Loop { tail: VertexId, head: VertexId },

    #[error("edge {tail} -> {head} appears more than once")]
    MultipleArc { tail: VertexId, head: VertexId },

    #[error("edges {tail} -> {head} and {head} -> {tail} form a digon")]
    Digon { tail: VertexId, head: VertexId },

    #[error("vertex {0} is listed more than once")]
    DuplicateVertex(VertexId),

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("unknown edge id {0}")]
    UnknownEdge(usize),

    #[error("component has no cycle")]
    NoCycle,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("enumeration would visit {required} edge subsets, above the limit of {limit}; pass --force to run anyway")]
    GuardrailExceeded { required: u128, limit: u128 },

    #[error("a unicyclic component has vanishing determinant at the requested parameters")]
    VanishingComponent,

    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("no non-negative integer solution: {0}")]
    NonIntegerSolution(String),

    #[error("expected a vertex subset of size {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("counting produced a non-integer or negative value: {0}")]
    NonIntegerResult(String),

    #[error("count disagrees with census enumeration: {0}")]
    CensusMismatch(String),

    #[error("cofactor computed but the cycle condition does not hold for this parameter")]
    ConditionViolated(Box<SpanningTreeReport>),

    #[error("cofactor is not a non-negative rational integer: {0}")]
    NonInteger(String),

    #[error("graph has no vertices")]
    EmptyGraph,
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GuardrailExceeded { .. } => 3,
            Error::VanishingComponent
            | Error::NotPrime(_)
            | Error::NotAPower { .. }
            | Error::NotRational(_)
            | Error::NotInSubfield(_)
            | Error::NonIntegerSolution(_)
            | Error::NonIntegerResult(_)
            | Error::CensusMismatch(_)
            | Error::ConditionViolated(_)
            | Error::NonInteger(_)
            | Error::NotCoprime { .. }
            | Error::NoCycle
            | Error::DivisionByZero => 2,
            _ => 1,
        }
    }
}
