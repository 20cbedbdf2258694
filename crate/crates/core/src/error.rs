use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole of {0}")]
    Pole(&'static str),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what} did not converge (last estimate {estimate:e})")]
    Unconverged { what: &'static str, estimate: f64 },
    #[error("expansion inapplicable: {0}")]
    Inapplicable(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::Precondition(_) => "precondition",
            Error::Unconverged { .. } => "unconverged",
            Error::Inapplicable(_) => "inapplicable",
            Error::Invariant(_) => "invariant",
        }
    }

    /// Domain-class errors map to exit code 2 in the command-line tool.
    pub fn is_domain_class(&self) -> bool {
        !matches!(self, Error::Unconverged { .. } | Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
