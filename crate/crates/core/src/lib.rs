//! Permutation groups, factorisation certificates and arc-transitive
//! embedding certificates.

pub mod error;
pub mod group;
pub mod perm;

pub use error::{gate, Error, Limits, Result};
pub use group::{set_default_seed, BuildOptions, PermGroup};
pub use perm::Perm;
pub mod coset;
pub mod ops;

pub use coset::{CosetSpace, Suborbit};
pub mod structure;

pub use structure::StructureTag;
pub mod lattice;
pub mod factor;
pub mod validate;
