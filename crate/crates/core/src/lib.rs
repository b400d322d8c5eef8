//! Exact enumeration of nearest-neighbour lattice trees and bond animals on Z^d,
//! with the truncated generating-function algebra needed to verify their
//! inclusion-exclusion and lace-expansion identities coefficientwise.
//!
//! Everything is exact: cluster counts are arbitrary-precision integers,
//! series coefficients are arbitrary-precision rationals, and floating point
//! appears only in report rendering.

pub mod cache;
pub mod cluster;
pub mod enumerate;
pub mod error;
pub mod expansion;
pub mod generating;
pub mod lace;
pub mod lattice;
pub mod onept;
pub mod polyd;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

/// Version stamp recorded in every count table, cache entry, and CLI output.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
