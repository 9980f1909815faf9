use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("family member below minimum size: pattern {label} (index {index}) has {nodes} node(s), at least 3 required")]
    FamilyMemberTooSmall {
        index: usize,
        label: String,
        nodes: usize,
    },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
