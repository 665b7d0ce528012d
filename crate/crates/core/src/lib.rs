//! Exact computation with real-representable matroids: rank oracles over the
//! rationals, flat enumeration, degeneracy certificates, principal truncation,
//! and red/blue coloring conditions.
//!
//! All arithmetic is exact (arbitrary-precision integers via fraction-free
//! elimination); no floating point is used anywhere. Ground sets are capped at
//! 64 elements, which is ample for the desk-scale configurations this crate
//! targets.

pub mod analysis;
pub mod coloring;
pub mod constructions;
pub mod degeneracy;
pub mod flats;
pub mod io;
pub mod linear;
pub mod matroid;
pub mod rational;
pub mod subset;
pub mod suite;
pub mod truncation;

pub use linear::LinearMatroid;
pub use matroid::RankOracle;
pub use subset::Subset;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index {index} out of range for ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
