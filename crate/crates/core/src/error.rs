use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("group order exceeds element cap {cap} (projected order {projected})")]
    ElementCap { cap: usize, projected: String },

    #[error("degree {degree} exceeds degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("group of order {order} exceeds brute-force cap {cap}")]
    BruteCap { order: usize, cap: usize },

    #[error("search budget of {budget} exhausted: {context}")]
    BudgetExceeded { budget: u64, context: String },

    #[error("group is not solvable (derived series stabilizes at order {order})")]
    NotSolvable { order: usize },

    #[error("group is not abelian: {0}")]
    NotAbelian(String),

    #[error("group is not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("dg is undefined for the perfect nontrivial group {0}")]
    PerfectGroup(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("construction defect in {anchor}: {detail}")]
    ConstructionDefect { anchor: String, detail: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("computation cancelled")]
    Cancelled,
}

impl Error {
    pub(crate) fn defect(anchor: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::ConstructionDefect {
            anchor: anchor.into(),
            detail: detail.into(),
        }
    }

    /// Caps, budgets and cancellation: the run was cut short, nothing was refuted.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::ElementCap { .. }
                | Error::DegreeCap { .. }
                | Error::BruteCap { .. }
                | Error::BudgetExceeded { .. }
                | Error::Cancelled
        )
    }
}
