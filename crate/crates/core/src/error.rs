use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid Q-set: {0}")]
    InvalidQSet(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budgets must be positive")]
    ZeroBudget,
    #[error("the base group D is trivial")]
    TrivialD,
    #[error("the Q-set is empty")]
    EmptyOmega,
    #[error("the action of Q is not known to be free")]
    NotFreeAction,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certificate budget exceeded: {0}")]
    CertificateBudget(String),
    #[error("closed form disagrees with direct conjugation: {0}")]
    FormulaMismatch(String),
    #[error("malformed literal `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::KindMismatch { .. } => "E_KIND_MISMATCH",
            Error::InvalidElement(_) => "E_INVALID_ELEMENT",
            Error::InvalidGroup(_) => "E_INVALID_GROUP",
            Error::InvalidQSet(_) => "E_INVALID_QSET",
            Error::Unsupported(_) => "E_UNSUPPORTED",
            Error::ZeroBudget => "E_ZERO_BUDGET",
            Error::TrivialD => "E_TRIVIAL_D",
            Error::EmptyOmega => "E_EMPTY_OMEGA",
            Error::NotFreeAction => "E_NOT_FREE_ACTION",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::CertificateBudget(_) => "E_CERTIFICATE_BUDGET",
            Error::FormulaMismatch(_) => "E_FORMULA_MISMATCH",
            Error::Parse { .. } => "E_PARSE",
        }
    }

    pub(crate) fn mismatch(expected: impl Into<String>, found: impl std::fmt::Debug) -> Self {
        Error::KindMismatch {
            expected: expected.into(),
            found: format!("{found:?}"),
        }
    }

    pub(crate) fn parse(literal: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            literal: literal.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
