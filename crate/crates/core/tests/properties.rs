use std::collections::HashSet;

use arcmaps_core::lattice::subgroup_classes;
use arcmaps_core::ops::intersection;
use arcmaps_core::structure::{classify_cyclic_dihedral, involutions, StructureTag};
use arcmaps_core::{CosetSpace, Limits, Perm, PermGroup};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm_strategy(max_degree: usize) -> impl Strategy<Value = Perm> {
    (1..=max_degree).prop_flat_map(|n| {
        Just((0..n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    })
}

fn pair_strategy(max_degree: usize) -> impl Strategy<Value = (Perm, Perm)> {
    (2..=max_degree).prop_flat_map(|n| {
        let v: Vec<u32> = (0..n as u32).collect();
        (Just(v.clone()).prop_shuffle(), Just(v).prop_shuffle())
            .prop_map(|(a, b)| (Perm::from_images(a).unwrap(), Perm::from_images(b).unwrap()))
    })
}

fn quad_strategy(max_degree: usize) -> impl Strategy<Value = ((Perm, Perm), (Perm, Perm))> {
    (2..=max_degree).prop_flat_map(|n| {
        let v: Vec<u32> = (0..n as u32).collect();
        let shuffled = move || Just(v.clone()).prop_shuffle().prop_map(|a| Perm::from_images(a).unwrap());
        ((shuffled(), shuffled()), (shuffled(), shuffled()))
    })
}

/// Naive closure under right multiplication.
fn closure(gens: &[Perm], degree: usize) -> HashSet<Perm> {
    let mut seen = HashSet::from([Perm::identity(degree)]);
    let mut todo = vec![Perm::identity(degree)];
    while let Some(x) = todo.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                todo.push(y);
            }
        }
    }
    seen
}

proptest! {
    #[test]
    fn inverse_undoes(p in perm_strategy(12)) {
        prop_assert!(p.mul(&p.inverse()).is_identity());
        let mut seen = vec![false; p.degree()];
        for x in 0..p.degree() {
            prop_assert!(!seen[p.apply(x)]);
            seen[p.apply(x)] = true;
        }
    }

    #[test]
    fn sign_is_multiplicative((a, b) in pair_strategy(10)) {
        prop_assert_eq!(a.mul(&b).sign(), a.sign() * b.sign());
    }

    #[test]
    fn pair_lift_is_a_homomorphism((a, b) in pair_strategy(8)) {
        prop_assert_eq!(a.mul(&b).lift_to_pairs(), a.lift_to_pairs().mul(&b.lift_to_pairs()));
    }

    #[test]
    fn cycle_text_round_trips(p in perm_strategy(12)) {
        let text = p.to_string();
        prop_assert_eq!(Perm::parse(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn order_kills(p in perm_strategy(12)) {
        prop_assert!(p.pow(p.order_u64()).is_identity());
    }

    #[test]
    fn bsgs_matches_closure((a, b) in pair_strategy(7)) {
        let n = a.degree();
        let g = PermGroup::new(n, vec![a.clone(), b.clone()]).unwrap();
        let all = closure(&[a, b], n);
        prop_assert_eq!(g.order_u64(), Some(all.len() as u64));
        for x in &all {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn orbit_stabilizer((a, b) in pair_strategy(9), pt in 0usize..9) {
        let n = a.degree();
        let pt = pt % n;
        let g = PermGroup::new(n, vec![a, b]).unwrap();
        let orb = g.orbit(pt).unwrap();
        let st = g.stabilizer(pt).unwrap();
        prop_assert_eq!(st.order() * orb.len(), g.order().clone());
    }

    #[test]
    fn intersection_matches_brute_force(((a, b), (c, d)) in quad_strategy(6)) {
        let n = a.degree();
        let g = PermGroup::new(n, vec![a.clone(), b.clone()]).unwrap();
        let h = PermGroup::new(n, vec![c.clone(), d.clone()]).unwrap();
        let i = intersection(&g, &h, &Limits::default()).unwrap();
        let brute = closure(&[a, b], n).intersection(&closure(&[c, d], n)).count();
        prop_assert_eq!(i.order_u64(), Some(brute as u64));
    }

    #[test]
    fn suborbits_partition_and_pair((a, b) in pair_strategy(6), pt in 0usize..6) {
        let n = a.degree();
        let x = PermGroup::new(n, vec![a, b]).unwrap();
        let st = x.stabilizer(pt % n).unwrap();
        let space = CosetSpace::new(&x, &st, &Limits::default()).unwrap();
        let subs = space.suborbits();
        prop_assert_eq!(subs.iter().map(|s| s.size).sum::<usize>(), space.size());
        for (i, s) in subs.iter().enumerate() {
            prop_assert_eq!(subs[s.paired].paired, i);
            prop_assert_eq!(subs[s.paired].size, s.size);
        }
    }
}

#[test]
fn construction_is_deterministic() {
    let gens = |s: &[&str]| s.iter().map(|t| Perm::parse(t, 10).unwrap()).collect::<Vec<_>>();
    let g1 = PermGroup::new(10, gens(&["(1,2,3,4,5,6,7,8,9,10)", "(1,2)(3,7)"])).unwrap();
    let g2 = PermGroup::new(10, gens(&["(1,2,3,4,5,6,7,8,9,10)", "(1,2)(3,7)"])).unwrap();
    assert_eq!(g1.base(), g2.base());
    assert_eq!(g1.strong_generators(), g2.strong_generators());
    let mut r1 = ChaCha8Rng::seed_from_u64(5);
    let mut r2 = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        assert_eq!(g1.random_element(&mut r1), g2.random_element(&mut r2));
    }
}

fn sym(n: usize) -> PermGroup {
    let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
    PermGroup::new(n, vec![Perm::parse("(1,2)", n).unwrap(), c]).unwrap()
}

/// Every subgroup generated by at most two elements, found by brute force.
fn two_generated_subgroups(x: &PermGroup) -> HashSet<Vec<Perm>> {
    let els = x.elements(10_000).unwrap();
    let mut out = HashSet::new();
    for a in &els {
        for b in &els {
            let mut s: Vec<Perm> = closure(&[a.clone(), b.clone()], x.degree()).into_iter().collect();
            s.sort();
            out.insert(s);
        }
    }
    out
}

#[test]
fn lattice_counts_match_brute_force() {
    // S_4 and A_5: every subgroup is 2-generated, so the brute force is complete.
    let a5 = PermGroup::new(
        5,
        vec![Perm::parse("(1,2,3)", 5).unwrap(), Perm::parse("(1,2,3,4,5)", 5).unwrap()],
    )
    .unwrap();
    for (g, classes) in [(sym(4), 11), (a5, 9)] {
        let l = subgroup_classes(&g, &Limits::default()).unwrap();
        assert_eq!(l.classes.len(), classes);
        assert_eq!(l.total_subgroups() as usize, two_generated_subgroups(&g).len());
    }
    let s5 = subgroup_classes(&sym(5), &Limits::default()).unwrap();
    assert_eq!(s5.classes.len(), 19);
    assert_eq!(s5.total_subgroups(), 156);
}

#[test]
fn dihedral_tags_agree_with_involution_counts() {
    // D_2m has m involutions for m odd, m+1 for m even.
    for m in 3..12usize {
        let r = Perm::from_cycles(m, &[(0..m).collect()]).unwrap();
        let s = Perm::from_images((0..m as u32).map(|i| (m as u32 - i) % m as u32).collect()).unwrap();
        let d = PermGroup::new(m, vec![r, s]).unwrap();
        let lim = Limits::default();
        assert_eq!(classify_cyclic_dihedral(&d, &lim).unwrap(), StructureTag::Dihedral(2 * m as u64));
        let expect = if m % 2 == 1 { m } else { m + 1 };
        assert_eq!(involutions(&d, &lim).unwrap().len(), expect);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut v: Vec<u32> = (0..6).collect();
    v.shuffle(&mut rng);
    assert!(Perm::from_images(v).is_ok());
}
