//! Integer colorings of braid and tangle strands.
//!
//! A vector in Z^m is read as the colors on the m top endpoints of a
//! braid-like diagram. Twelve relations are supported, from classical braids to
//! virtual string links; each is characterized by a small invariant profile and
//! comes with a canonical representative and, where possible, an explicit word
//! carrying one vector to another.

pub mod action;
pub mod canon;
pub mod decide;
mod error;
pub mod invariants;
pub mod witness;

pub use action::{Move, MoveKind, MoveWord, Permutation, Sign};
pub use error::{Error, Result};
pub use invariants::{ColorVector, InvariantProfile, Relation};
