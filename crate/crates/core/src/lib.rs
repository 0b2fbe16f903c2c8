//! Finite permutation groups, wreath products and the invariants `dg`,
//! `dg_p`, derived length and wreath length, with checkable certificates.
//!
//! Groups are enumerated eagerly and kept small: every search in the crate is
//! exhaustive up to explicit caps, and every constructed homomorphism is
//! certified by the graph criterion before it is returned.

pub mod abelian;
pub mod arith;
pub mod catalog;
pub mod cert;
pub mod cli;
pub mod elements;
pub mod error;
pub mod expr;
pub mod functorial;
pub mod group;
pub mod hom;
pub mod invariants;
pub mod iso;
pub mod perm;
pub mod subgroup;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{CancelToken, FiniteGroup, Limits};
pub use hom::Homomorphism;
pub use perm::Perm;
