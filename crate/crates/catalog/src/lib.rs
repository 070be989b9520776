//! Group registry, the constructions of the prime-degree example, and the
//! machine-readable tables with their row verifier.

pub mod constructions;
pub mod records;
pub mod registry;
pub mod rows;

pub use registry::{named_group, Resolver};
