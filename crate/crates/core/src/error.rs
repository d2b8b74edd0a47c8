use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("undeclared node `{0}`")]
    UndeclaredNode(String),
    #[error("not a walk: step {0} is not an edge")]
    NotAWalk(usize),
    #[error("junction mismatch: first path ends where the second does not start")]
    JunctionMismatch,
    #[error("graph is not symmetric")]
    NotSymmetric,
    #[error("register r{0} out of range (k = {1})")]
    RegisterOutOfRange(usize, usize),
    #[error("sort error: {0}")]
    Sort(String),
    #[error("unbound variables: {0}")]
    Unbound(String),
    #[error("fragment violation: {0}")]
    FragmentViolation(String),
    #[error("unassigned variable `{0}`")]
    UnassignedVariable(String),
    #[error("position out of range for `{0}`")]
    PositionOutOfRange(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("{0}")]
    Mode(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
