use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A generator name that does not belong to the presentation at hand.
    #[error("generator {0:?} is not part of this presentation")]
    PresentationMismatch(String),

    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("k = {k} exceeds the configured bound {max} (set RHMAP_MAX_K to raise it)")]
    ResourceBound { k: usize, max: usize },

    /// Some equation of the degree-zero system has no factorization into
    /// rational linear forms.
    #[error("system not solvable by factorization; residual equations: {}", residual.join("; "))]
    UnsolvableByFactorization { residual: Vec<String> },

    #[error("invalid augmentation: {}", violations.join("; "))]
    InvalidAugmentation { violations: Vec<String> },

    #[error("input is not a minimal Sullivan algebra: {0}")]
    NonMinimal(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI on stderr.
    pub fn code(&self) -> &'static str {
        match self {
            Error::PresentationMismatch(_) => "presentation-mismatch",
            Error::DuplicateGenerator(_) => "duplicate-generator",
            Error::Precondition(_) => "precondition",
            Error::ResourceBound { .. } => "resource-bound",
            Error::UnsolvableByFactorization { .. } => "unsolvable-by-factorization",
            Error::InvalidAugmentation { .. } => "invalid-augmentation",
            Error::NonMinimal(_) => "non-minimal",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
        }
    }
}
