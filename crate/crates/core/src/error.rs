use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degenerate lattice (determinant is zero)")]
    DegenerateLattice,

    #[error("vector is not in the dual lattice: {0}")]
    NotInDual(String),

    #[error("{0} is not a member of the group")]
    NotAMember(String),

    #[error("assignment shape does not match configuration {0}")]
    ShapeMismatch(String),

    #[error("invalid glue: {0}")]
    InvalidGlue(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("no nonnegative integer solution")]
    NoSolution,

    #[error("solution is not unique ({0} nonnegative integer solutions)")]
    NonUnique(usize),

    #[error("unknown selector `{0}`")]
    UnknownSelector(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}
