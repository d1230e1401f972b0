//! Decision procedures for structural properties of monomial ideals.
//!
//! The crate decides genericity, cleanness (clean, pretty clean, almost
//! clean), Cohen–Macaulayness and sequential Cohen–Macaulayness, shellability,
//! linear quotients and componentwise linearity, and returns certificates
//! (prime filtrations, shelling orders, linear-quotient orders) that can be
//! replayed independently.

mod bits;
pub mod budget;
pub mod classify;
pub mod corpus;
pub mod decomposition;
pub mod document;
pub mod error;
pub mod filtrations;
pub mod linalg;
pub mod monomial;
pub mod resolutions;
pub mod shelling;
pub mod simplicial;
pub mod verdict;

pub use budget::{Budget, Search};
pub use error::{Error, Result};
pub use monomial::{is_generic, strictly_divides, Monomial, MonomialIdeal, MonomialPrime, Ring, VarSet};
