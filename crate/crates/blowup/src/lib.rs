//! Exact-arithmetic library for the canonical blow-ups 𝒯_{s,p,n} of
//! Grassmann manifolds and the submanifolds ℳ_{s,p,n}: Plücker strata,
//! van der Waerden normal-form charts, Picard lattices, curve intersection
//! numbers, and the Kähler–Einstein criteria for spherical varieties
//! via exact polytope integration.

pub mod error;
pub mod rat;
pub mod indices;
pub mod linalg;
pub mod plucker;
pub mod poly;
pub mod polytope;
pub mod charts;
pub mod picard;
pub mod curves;
pub mod ke;

pub use error::{Error, Result};
