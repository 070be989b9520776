use arcmaps_core::{Limits, PermGroup};
use arcmaps_geometry::linear::{projective_points, sl_generators};
use arcmaps_geometry::*;
use arcmaps_graph::{canonical_form, invariants, iso};
use num_bigint::BigUint;
use std::time::Instant;

#[test]
fn plane_incidence_graphs() {
    for (q, n, k) in [(2u64, 14, 3), (3, 26, 4), (4, 42, 5), (8, 146, 9), (9, 182, 10)] {
        let p = projective_plane(q).unwrap();
        let inv = invariants(&p.incidence);
        assert_eq!((inv.n, inv.valency(), inv.girth), (n, Some(k), Some(6)), "q={q}");
        assert!(inv.bipartite.is_some() && inv.connected);
        assert!(p.incidence.is_automorphism(&p.duality));
        let np = p.points.len();
        for a in 0..np {
            for b in a + 1..np {
                let common = p.lines.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                assert_eq!(common, 1);
            }
        }
    }
}

#[test]
fn antiflag_and_biplane() {
    let lim = Limits::default();
    let a = pg3_antiflag_graph();
    let inv = invariants(&a);
    assert_eq!((inv.n, inv.valency(), inv.bipartite), (30, Some(8), Some((15, 15))));
    let aut = PermGroup::new(30, canonical_form(&a, &lim).unwrap().automorphisms).unwrap();
    assert_eq!(aut.order_u64(), Some(40320));

    // Two points share two blocks, so the incidence graph has 4-cycles.
    let b = invariants(&biplane11_graph());
    assert_eq!((b.n, b.valency(), b.girth, b.bipartite), (22, Some(5), Some(4), Some((11, 11))));
}

#[test]
fn matrix_groups() {
    let lim = Limits::default();
    let k2 = make_field(2).unwrap();
    let d = Domain::new(projective_points(&k2, 3), true);
    let g = matrix_to_perm(&k2, &sl_generators(&k2, 3), &d, Some(&BigUint::from(168u32)), &lim).unwrap();
    assert_eq!(g.degree(), 7);
    let k3 = make_field(3).unwrap();
    let d = Domain::new(projective_points(&k3, 2), true);
    // SL_2(3) acts on the projective line with kernel ±1.
    let g = matrix_to_perm(&k3, &sl_generators(&k3, 2), &d, Some(&BigUint::from(12u32)), &lim).unwrap();
    assert!(g.is_transitive());
    assert!(matrix_to_perm(&k3, &sl_generators(&k3, 2), &d, Some(&BigUint::from(24u32)), &lim).is_err());
}

#[test]
fn cyclic_model_of_pg2_8() {
    let t = Instant::now();
    let p = singer_plane(8).unwrap();
    assert_eq!(p.difference_set.len(), 9);
    let lim = Limits::default();
    let reference = projective_plane(8).unwrap().incidence;
    assert!(iso(&p.incidence, &reference, &lim).unwrap());
    let x = p.full_group().unwrap();
    assert_eq!(x.order_u64(), Some(16482816 * 6));
    assert_eq!(p.singer_normalizer().unwrap().order_u64(), Some(73 * 18));
    assert!(t.elapsed().as_secs() < 120);
}

#[test]
fn orthogonal_suite() {
    let lim = Limits::default();
    let s = o53_suite().unwrap();
    for c in s.verify(&lim).unwrap() {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
    let g = &s.monomial;
    assert!(g.is_subgroup_of(&s.x));
    assert!(g.is_transitive());
}
