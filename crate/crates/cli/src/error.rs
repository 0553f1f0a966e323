use matropoly_core::{DecompositionError, GeometryError, MatroidError, VolumeError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("declared rank {declared} but the bases have rank {computed}")]
    RankMismatch { declared: usize, computed: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Every error is a parse or validation failure (exit status 2);
    /// verification mismatches are reported, not raised.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
