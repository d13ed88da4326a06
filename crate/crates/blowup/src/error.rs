//! Error types shared across the crate.

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside a function's domain (bad (s,p,n), bad chart index,
    /// empty stratum where one is required, and so on).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A point outside the domain of the blow-up map: every Plücker
    /// coordinate of some stratum k vanishes.
    #[error("outside the domain of the blow-up map: all stratum-{k} Plücker coordinates vanish")]
    OutsideBlowupDomain {
        /// The stratum whose coordinates all vanish.
        k: usize,
    },

    /// Malformed input (matrix files, polynomial/polytope text formats).
    #[error("parse error: {0}")]
    Parse(String),

    /// Geometric degeneracies in polytope routines.
    #[error("polytope error: {0}")]
    Polytope(String),

    /// Two independent computations of the same quantity disagree.  This is a
    /// bug, not a user error; callers should treat it as fatal.
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
