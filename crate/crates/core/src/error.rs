use thiserror::Error;

use crate::graph::ValidationReport;

/// Errors raised by the library. Mathematical outcomes such as "no
/// nontrivial solution" are not errors; they are reported through
/// [`crate::solver::SolveStatus`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("function has {got} values but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(String, String),

    #[error("self loop at vertex {0}")]
    SelfLoop(String),

    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),

    #[error("potential must be given on all vertices or none")]
    PartialPotential,

    #[error("function is nonzero ({value}) at vertex {vertex} outside the interior")]
    NotAdmissible { vertex: usize, value: f64 },

    #[error("interior set is empty")]
    EmptyInterior,

    #[error("graph has no potential h")]
    MissingPotential,

    #[error("graph has no boundary marking")]
    MissingBoundary,

    #[error("exponent must satisfy gamma >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is invalid: {}", .0.summary())]
    InvalidGraph(ValidationReport),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("quadratic form is not positive definite on the admissible space")]
    DegenerateForm,

    #[error("the zero function is not allowed here")]
    ZeroFunction,

    #[error("function is not in the cone (I_eta = {i_eta})")]
    NotInCone { i_eta: f64 },

    #[error("quadratic split is not positive (I_lambda = {i_lambda})")]
    NonPositiveQuadratic { i_lambda: f64 },

    #[error("parameters outside the admissible range: {0}")]
    ParameterRange(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
