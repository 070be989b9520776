use arcmaps_core::{Perm, Result};
use arcmaps_graph::Graph;

use crate::linear::{dot, projective_points, Vector};
use crate::{make_field, SmallField};

pub const MAX_PLANE_ORDER: u64 = 9;

#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    pub field: SmallField,
    pub points: Vec<Vector>,
    /// Line `i` is the set of points orthogonal to `points[i]`, sorted.
    pub lines: Vec<Vec<usize>>,
    /// Points are vertices `0..N`, lines `N..2N`.
    pub incidence: Graph,
    /// The polarity `point i ↔ line i`, an automorphism of the incidence graph.
    pub duality: Perm,
}

pub fn projective_plane(q: u64) -> Result<ProjectivePlane> {
    let field = make_field(q)?;
    if q > MAX_PLANE_ORDER {
        return Err(arcmaps_core::Error::BadParams(format!("PG_2({q}) above q = {MAX_PLANE_ORDER}")));
    }
    let points = projective_points(&field, 3);
    let n = points.len();
    let lines: Vec<Vec<usize>> = points
        .iter()
        .map(|a| (0..n).filter(|&j| dot(&field, a, &points[j]) == 0).collect())
        .collect();
    let incidence = Graph::from_edges(
        2 * n,
        lines.iter().enumerate().flat_map(|(l, pts)| pts.iter().map(move |&p| (p, n + l))),
    )?;
    let duality = Perm::from_images((0..2 * n as u32).map(|v| (v + n as u32) % (2 * n as u32)).collect())?;
    Ok(ProjectivePlane {
        field,
        points,
        lines,
        incidence,
        duality,
    })
}

/// Points and planes of `PG_3(2)`, adjacent when not incident.
pub fn pg3_antiflag_graph() -> Graph {
    let k = make_field(2).expect("F_2");
    let pts = projective_points(&k, 4);
    let n = pts.len();
    let mut e = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            if dot(&k, a, b) != 0 {
                e.push((i, n + j));
            }
        }
    }
    Graph::from_edges(2 * n, e).expect("valid")
}

pub const BIPLANE_BASE_BLOCK: [usize; 5] = [1, 3, 4, 5, 9];

/// Blocks `B_i = {i + r : r ∈ {1,3,4,5,9}}` mod 11.
pub fn biplane11_blocks() -> Vec<Vec<usize>> {
    (0..11)
        .map(|i| {
            let mut b: Vec<usize> = BIPLANE_BASE_BLOCK.iter().map(|r| (i + r) % 11).collect();
            b.sort_unstable();
            b
        })
        .collect()
}

/// Incidence graph of the 11-point biplane: points `0..11`, blocks `11..22`.
pub fn biplane11_graph() -> Graph {
    let blocks = biplane11_blocks();
    Graph::from_edges(
        22,
        blocks.iter().enumerate().flat_map(|(b, pts)| pts.iter().map(move |&p| (p, 11 + b))),
    )
    .expect("valid")
}
