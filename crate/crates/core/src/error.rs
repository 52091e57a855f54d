use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("element is not in the group: {0}")]
    NotInGroup(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("state budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("hypotheses not met: {0}")]
    Hypothesis(String),

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(String, String),

    #[error("lattice map is not surjective: {0}")]
    NotSurjective(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`--`{1}`")]
    UnknownEdge(String, String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex `{0}` has weight {1}, only (-1)-curves can be contracted")]
    NotContractible(String, i64),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
