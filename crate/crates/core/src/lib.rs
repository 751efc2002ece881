//! Exact combinatorics of twisted conjugacy in extended affine Weyl groups.
//!
//! Elements of `W = Y ⋊ W_0` are stored in `(lambda, w)` normal form. On top of
//! the group arithmetic the crate provides length-preserving twists, reduction
//! to minimal length, straight elements, the Kottwitz and Newton invariants,
//! and the relative group of fixed points of a twist together with the
//! comparison map into the absolute straight classes. Every structural
//! statement is checked exhaustively on a finite length window.

pub mod affine;
pub mod catalog;
pub mod config;
pub mod conjugacy;
pub mod figure;
pub mod fixed;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod root_data;
pub mod twist;

pub use affine::{AffineElement, AffineWeylGroup, OmegaElement};
pub use conjugacy::{Reflections, StraightClassRecord};
pub use fixed::FixedSubgroup;
pub use invariants::{ClassInvariant, CoinvariantGroup};
pub use report::VerificationReport;
pub use root_data::{FiniteWeylElement, LatticeChoice, RationalCoweight, RootDatum};
pub use twist::{GammaSubgroup, Twist};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported Cartan type `{0}`")]
    UnsupportedType(String),
    #[error("invalid translation lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("invalid subgroup of Omega: {0}")]
    InvalidGamma(String),
    #[error("enumeration exceeded the element cap of {0}")]
    ResourceCap(usize),
    #[error("elements have different lengths ({0} and {1})")]
    LengthMismatch(u32, u32),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
