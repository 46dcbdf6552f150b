use thiserror::Error;

/// Errors surfaced by construction, verification, and consistency checks.
///
/// Contract violations that can only arise from buggy calling code (length
/// mismatches, out-of-range indices) panic instead; everything a caller can
/// trigger with data goes through this enum.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("polytope spans dimension {dim} inside ambient rank {ambient}; apply affine normalization first")]
    NotFullDimensional { dim: usize, ambient: usize },

    #[error("lifting heights are degenerate: lower hull has a non-simplicial cell on {cell_points} points")]
    DegenerateHeights { cell_points: usize },

    #[error("containment violated: {0}")]
    NotContained(String),

    #[error(
        "pair triangulation failed verification after {attempts} attempts (seed {seed}): {reason}"
    )]
    PairVerification {
        attempts: usize,
        seed: u64,
        reason: String,
    },

    #[error("exhausted {attempts} attempts drawing a full-dimensional random polytope")]
    DegenerateDraw { attempts: usize },

    #[error("internal inconsistency in {context}: {details}")]
    Inconsistency { context: String, details: String },
}

impl Error {
    pub(crate) fn inconsistency(context: impl Into<String>, details: impl Into<String>) -> Self {
        Error::Inconsistency {
            context: context.into(),
            details: details.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
