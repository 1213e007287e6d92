use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("illegal step at i={0}")]
    IllegalStep(usize),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the specialization: residual denominator {residual}")]
    Pole { residual: String },
    #[error("critical pair obstruction: no separating index for beta={beta}")]
    CriticalObstruction { beta: String },
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("invalid specialization: {0}")]
    InvalidSpecialization(String),
    #[error("invalid quasistaircase: {0}")]
    InvalidQuasistaircase(String),
    #[error("property V({j},{k}) absent")]
    PropertyVAbsent { j: usize, k: usize },
    #[error("equipolar reduction stuck: {0}")]
    Stuck(String),
    #[error("eigen check failed: {0}")]
    EigenCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
