//! Exact enumeration of lozenge tilings of dented quartered hexagons with a
//! free lattice-line boundary, and the correlation of a side-2 triangular gap
//! with the corner of a 90 degree angle that has a zig-zag (constrained) side
//! and a free side.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: big-integer and rational helpers (binomials, Pochhammer symbols,
//!   `num/den` formatting).
//! * [`regions`]: symbolic region specs and their explicit unit-triangle
//!   lattices.
//! * [`exactcount`]: the product formula, Pfaffians, the nonintersecting-path
//!   Pfaffian route, Schur's identity, binomial sum lemmas and MacMahon's box
//!   formula.
//! * [`oracle`]: brute-force transfer-matrix counting and enumeration of
//!   tilings, used as ground truth.
//! * [`correlation`]: the gap-corner correlation by a double sum, by moment
//!   polynomials and by finite-size ratios, plus its asymptotics.
//! * [`images`]: signed image-charge configurations and the distance-product
//!   prediction.
//! * [`sweep`] and [`suites`]: drivers shared by the command-line front end.

pub mod correlation;
pub mod exact;
pub mod exactcount;
pub mod images;
pub mod oracle;
pub mod regions;
pub mod suites;
pub mod sweep;

pub use exact::{ExactInt, ExactRat};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("placement error: {0}")]
    Placement(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
