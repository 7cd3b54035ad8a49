//! Crate-wide error type.

use thiserror::Error;

/// Unified error for every fallible operation in the crate.
///
/// Variants are grouped by what went wrong rather than by module, so callers
/// can match on the failure class (bad input, resource cap, numerical
/// breakdown) without caring which pillar raised it.
#[derive(Debug, Error)]
pub enum Error {
    /// Input lies outside the operation's documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested result cannot be represented at the required precision.
    #[error("precision error: {0}")]
    Precision(String),

    /// Input exceeds a documented size cap.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// An affine map that must contract does not (largest singular value >= 1).
    #[error("map {index} is not contractive (largest singular value {sigma})")]
    NotContractive { index: usize, sigma: f64 },

    /// Two rasters (or a raster and a box) disagree on grid or bounds.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A regression or linear solve received rank-deficient data.
    #[error("rank error: {0}")]
    Rank(String),

    /// A scene element rasterized to the zero field and cannot act as an atom.
    #[error("element {index} ({label}) rasterizes to a zero atom")]
    ZeroAtom { index: usize, label: String },

    /// More focal labels were supplied than there are spiral junctions.
    #[error("label overflow: {labels} labels for {junctions} junctions")]
    LabelOverflow { labels: usize, junctions: usize },

    /// An internal structural invariant failed to hold.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a [`Error::Domain`] with a formatted message.
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
