use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("bilinear form is degenerate")]
    Degenerate,

    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,

    #[error("vector has self-pairing {0}, expected -2")]
    NotRoot(String),

    #[error("lattice is not even")]
    NotEven,

    #[error("group closure exceeded the budget of {0} elements")]
    BudgetExceeded(usize),

    #[error("isometry does not stabilize the sublattice")]
    DoesNotStabilize,

    #[error("weyl word is not invariant under the group action")]
    NotInvariant,

    #[error("orthogonal complement of the sublattice has rank 0")]
    TrivialComplement,

    #[error("no certificate: {0}")]
    NoCertificate(String),

    #[error("unsupported field: p = {p}, n = {n}")]
    UnsupportedField { p: u32, n: u32 },

    #[error("modulus is not irreducible")]
    Reducible,

    #[error("division by zero")]
    DivisionByZero,

    #[error("form is not homogeneous")]
    NotHomogeneous,

    #[error("linear forms defining the line are dependent")]
    DegenerateLine,

    #[error("lines are identical")]
    IdenticalLines,

    #[error("line {0} is not contained in the surface")]
    LineNotContained(String),

    #[error("polynomial {0} has no roots in the prime field")]
    NoRoots(String),

    #[error("unexpected gram matrix")]
    UnexpectedGram,

    #[error("insufficient traces: need {needed}, have {have}")]
    InsufficientTraces { needed: usize, have: usize },

    #[error("missing point count for p = {p}, n = {n}")]
    MissingCount { p: u32, n: u32 },

    #[error("counting over F_{p}^{n} exceeds the cost threshold ({cost} evaluations)")]
    CostRefused { p: u32, n: u32, cost: u128 },

    #[error("sign of the functional equation is undetermined (c9 = 0)")]
    SignUndetermined,

    #[error("stage '{stage}' failed: {message}")]
    Stage { stage: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorClass {
    /// A mathematical check failed.
    Math,
    /// Malformed or unreadable input.
    Input,
    /// Work refused by the cost policy, or data it would have produced is missing.
    Budget,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Math => 1,
            ErrorClass::Input => 2,
            ErrorClass::Budget => 3,
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::UnsupportedField { .. } => {
                ErrorClass::Input
            }
            Error::CostRefused { .. }
            | Error::MissingCount { .. }
            | Error::InsufficientTraces { .. }
            | Error::BudgetExceeded(_) => ErrorClass::Budget,
            _ => ErrorClass::Math,
        }
    }

    pub(crate) fn stage(stage: &str, message: impl Into<String>) -> Self {
        Error::Stage {
            stage: stage.to_string(),
            message: message.into(),
        }
    }
}
