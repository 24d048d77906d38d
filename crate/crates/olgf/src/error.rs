use olgf_core::img::ImgError;
use olgf_core::nonrational::NonRationalError;
use olgf_core::olgf::OlgfError;
use olgf_core::poly_series::PolyError;
use olgf_core::tree_group::TreeError;
use thiserror::Error;

/// Errors surfaced by the command line, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("not Phi-finite: descendant graph incomplete after {nodes} nodes")]
    NotPhiFinite { nodes: usize },
    #[error("{0} mismatch(es) found")]
    Diff(usize),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
            CliError::NotPhiFinite { .. } => 4,
            CliError::Diff(_) => 5,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::DepthBudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<OlgfError> for CliError {
    fn from(e: OlgfError) -> Self {
        match e {
            OlgfError::NotPhiFinite { nodes } => CliError::NotPhiFinite { nodes },
            OlgfError::Tree(t) => t.into(),
            OlgfError::Poly(p) => p.into(),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<ImgError> for CliError {
    fn from(e: ImgError) -> Self {
        match e {
            ImgError::InvalidParameters(_)
            | ImgError::ConditionViolated(_)
            | ImgError::EmptySubset => CliError::Parse(e.to_string()),
            ImgError::CapExceeded { .. } | ImgError::BudgetExceeded(_) => {
                CliError::Budget(e.to_string())
            }
            ImgError::Tree(t) => t.into(),
            ImgError::Olgf(o) => o.into(),
        }
    }
}

impl From<NonRationalError> for CliError {
    fn from(e: NonRationalError) -> Self {
        match e {
            NonRationalError::Tree(t) => t.into(),
            NonRationalError::Olgf(o) => o.into(),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}
