use arcmaps_core::factor::{
    check_factorisation, normal_subgroup_displacement_check, verify_hypothesis, HypothesisOptions, Regularity,
};
use arcmaps_core::ops::intersection;
use arcmaps_core::validate::{validate_certificate, CertificateContext};
use arcmaps_core::{Limits, Perm, PermGroup, StructureTag};

fn p(s: &str, d: usize) -> Perm {
    Perm::parse(s, d).unwrap()
}

fn sym(n: usize) -> PermGroup {
    let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
    PermGroup::new(n, vec![p("(1,2)", n), c]).unwrap()
}

/// PSL_2(5) on the projective line {0,..,4,inf} labelled 1..6.
fn psl25() -> PermGroup {
    PermGroup::new(6, vec![p("(1,2,3,4,5)", 6), p("(2,5)(3,4)", 6), p("(1,6)(2,5)", 6)]).unwrap()
}

#[test]
fn s6_point_stabilizer_and_psl25() {
    let lim = Limits::default();
    let x = sym(6);
    let xa = x.stabilizer(5).unwrap();
    let g = psl25();
    assert_eq!(g.order_u64(), Some(60));
    let meet = intersection(&xa, &g, &lim).unwrap();
    assert_eq!(meet.order_u64(), Some(10));
    let run = verify_hypothesis(&x, &xa, &g, &HypothesisOptions::default(), &lim).unwrap();
    assert_eq!(run.ga_tag, StructureTag::Dihedral(10));
    assert_eq!(run.certificates.len(), 1);
    let c = &run.certificates[0];
    assert_eq!(c.valency, 5);
    assert_eq!(c.gab_order, 2);
    assert_eq!(c.regularity, Regularity::FlagRegular);
    assert_eq!(c.generated_order, 720u32.into());
    let ctx = CertificateContext {
        x_gens: x.generators(),
        xa_gens: xa.generators(),
        g_gens: g.generators(),
    };
    assert!(validate_certificate(&ctx, c, 1_000_000).is_empty());
    let xab = intersection(&xa, &xa.conjugate(&c.h), &lim).unwrap();
    assert!(normal_subgroup_displacement_check(&xa, &xab, &c.g, &lim).unwrap());
}

#[test]
fn s5_times_a5_is_not_a_factorisation() {
    let lim = Limits::default();
    let x = sym(6);
    let a = x.stabilizer(5).unwrap();
    let b = PermGroup::new(6, vec![p("(1,2,3)", 6), p("(1,2,3,4,5)", 6)]).unwrap();
    let c = check_factorisation(&x, &a, &b, &lim).unwrap();
    assert!(!c.is_valid());
    assert_eq!(c.meet_order, 60u32.into());
}
