use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates the operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("map with slope {0} is not a contraction")]
    NotContraction(Rational),
    /// The input sits on a pole or outside the domain of a rational function.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("budget exceeded: {what} (budget {budget})")]
    BudgetExceeded { what: String, budget: usize },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
