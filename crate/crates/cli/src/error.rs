use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("not valid TOML: {0}")]
    Toml(String),
    #[error("missing field `{0}`")]
    MissingField(String),
    #[error("field `{field}`: {reason}")]
    InvalidField { field: String, reason: String },
    #[error("field `{field}`: unknown kind `{kind}`")]
    UnknownKind { field: String, kind: String },
    #[error("field `{field}`: wreath products are not supported as Q")]
    UnsupportedQKind { field: String },
    #[error("field `{field}`: malformed literal `{literal}`: {reason}")]
    MalformedLiteral {
        field: String,
        literal: String,
        reason: String,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: wreathcc_core::Error,
    },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "E_IO",
            CliError::Toml(_) => "E_TOML",
            CliError::MissingField(_) => "E_MISSING_FIELD",
            CliError::InvalidField { .. } => "E_INVALID_FIELD",
            CliError::UnknownKind { .. } => "E_UNKNOWN_KIND",
            CliError::UnsupportedQKind { .. } => "E_UNSUPPORTED_Q_KIND",
            CliError::MalformedLiteral { .. } => "E_MALFORMED_LITERAL",
            CliError::Core { source, .. } => source.code(),
        }
    }

    /// True for problems with the input rather than with a computation.
    pub fn is_input_error(&self) -> bool {
        match self {
            CliError::Core { source, .. } => matches!(
                source,
                wreathcc_core::Error::TrivialD
                    | wreathcc_core::Error::EmptyOmega
                    | wreathcc_core::Error::InvalidGroup(_)
                    | wreathcc_core::Error::InvalidQSet(_)
                    | wreathcc_core::Error::InvalidElement(_)
                    | wreathcc_core::Error::KindMismatch { .. }
                    | wreathcc_core::Error::Parse { .. }
                    | wreathcc_core::Error::Unsupported(_)
                    | wreathcc_core::Error::ZeroBudget
            ),
            _ => true,
        }
    }

    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::InvalidField {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn core(context: impl Into<String>, source: wreathcc_core::Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn literal(field: &str, literal: &str, e: wreathcc_core::Error) -> Self {
        let reason = match e {
            wreathcc_core::Error::Parse { reason, .. } => reason,
            other => other.to_string(),
        };
        CliError::MalformedLiteral {
            field: field.into(),
            literal: literal.into(),
            reason,
        }
    }
}
