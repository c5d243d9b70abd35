//! Exact computations with multigraded quotients `R/I` of polynomial rings by
//! monomial ideals: Hilbert functions and polynomials, mixed multiplicities,
//! filter-regular sequences, and mixed multiplicities of ideals.

pub mod error;
pub mod filterreg;
pub mod hilbert;
pub mod idealmm;
pub mod kernel;
pub mod poly;

pub use error::{Error, ErrorKind, Result};
