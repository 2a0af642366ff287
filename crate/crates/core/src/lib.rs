//! Commutative semirings at desk scale: finite tables, built-in infinite
//! instances, spectra, localization, structure sheaves and valuations.

pub mod error;
pub mod ideals;
pub mod kernel;
pub mod localize;
pub mod poly;
pub mod presented;
pub mod report;
pub mod sheaf;
pub mod spectra;
pub mod subset;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use kernel::{FiniteSemiring, Semiring};
pub use subset::Subset;
