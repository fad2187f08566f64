use thiserror::Error;

/// Failure modes shared by every operation in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller violated a precondition (mismatched tables, wrong arity, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// A configured resource cap was exceeded. Exact algebra fails loudly
    /// instead of truncating.
    #[error("resource limit exceeded: {what} ({progress})")]
    Resource { what: String, progress: String },
    /// Input text could not be parsed.
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// A structural invariant of a domain object does not hold.
    #[error("invariant `{invariant}` violated: {detail}")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, progress: impl Into<String>) -> Self {
        Error::Resource {
            what: what.into(),
            progress: progress.into(),
        }
    }

    pub(crate) fn invariant(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            invariant,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
