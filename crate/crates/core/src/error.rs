use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("{what} exceeds the configured cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("the subgroup contains a nontrivial normal subgroup of order {core_order}; it does not model a normal closure")]
    NotNormalClosure { core_order: usize },

    #[error("subgroup is not normalized by the acting group")]
    NotNormalized,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// True for errors caused by a size cap or search budget.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
