//! Finite fields, projective planes and the small geometries behind the
//! named arc-transitive graphs.

mod field;
pub mod linear;
mod orthogonal;
mod plane;
mod singer;

pub use field::{make_field, prime_power, SmallField, MAX_FIELD};
pub use linear::{matrix_to_perm, Domain, Matrix, Vector};
pub use orthogonal::{o53_suite, Check, O53Suite, SO53_ORDER};
pub use plane::{biplane11_blocks, biplane11_graph, pg3_antiflag_graph, projective_plane, ProjectivePlane};
pub use singer::{singer_plane, SingerPlane};
