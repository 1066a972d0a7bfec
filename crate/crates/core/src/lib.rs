//! Finite residuated semigroups and their representations by binary
//! relations over finite bases.
//!
//! The pipeline runs from a validated [`algebra::FiniteResiduatedSemigroup`]
//! through its Dedekind-MacNeille completion ([`completion`]) to the relational
//! quantale over the completion ([`relrep`]), and checks the result with the
//! exhaustive [`verifier`]. [`search`] provides an independent brute-force
//! route over small bases, [`pointalg`] the point-algebra reducts, and
//! [`lambek`] the Lambek calculus with finite relational countermodels.

pub mod algebra;
pub mod bits;
pub mod completion;
pub mod concrete;
pub mod error;
pub mod lambek;
pub mod pointalg;
pub mod relrep;
pub mod search;
pub mod text;
pub mod verifier;

pub use algebra::{validate, FiniteResiduatedSemigroup, ValidationReport};
pub use bits::{BitSet, Relation};
pub use error::{Error, Result};
pub use text::{parse_algebra, serialize_algebra};
