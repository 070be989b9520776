//! Finds the explicit subgroup generators that the table files pin down.
//! Run with `cargo run --release -p arcmaps-catalog --example freeze_words`.
//! Every word printed here is re-verified by the row verifier, so this tool
//! is only a convenience for regenerating the data files.

use arcmaps_catalog::{named_group, Resolver};
use arcmaps_core::factor::{check_factorisation, exhaustive_search, verify_hypothesis, HypothesisOptions};
use arcmaps_core::lattice::subgroup_classes;
use arcmaps_core::ops::{intersection, setwise_stabilizer};
use arcmaps_core::{CosetSpace, Limits, Perm, PermGroup};
use arcmaps_geometry::linear::{all_vectors, sl_generators};
use arcmaps_geometry::{make_field, Domain};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn words(g: &PermGroup, rng: &mut ChaCha8Rng) -> String {
    let mut gens = g.generators().to_vec();
    for _ in 0..400 {
        let (a, b) = (g.random_element(rng), g.random_element(rng));
        if PermGroup::new(g.degree(), vec![a.clone(), b.clone()]).unwrap().order() == g.order() {
            gens = vec![a, b];
            break;
        }
    }
    gens.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn conj(g: &PermGroup, by: &Perm) -> PermGroup {
    g.conjugate(by)
}

fn classes_of(x: &PermGroup, order: u64) -> Vec<PermGroup> {
    let lim = Limits { lattice: 200_000, ..Limits::default() };
    subgroup_classes(x, &lim)
        .unwrap()
        .classes
        .into_iter()
        .filter(|c| c.order == order)
        .map(|c| c.rep)
        .collect()
}

/// A conjugate of some class representative satisfying `ok`.
fn find(x: &PermGroup, reps: &[PermGroup], rng: &mut ChaCha8Rng, ok: impl Fn(&PermGroup) -> bool) -> Option<PermGroup> {
    for r in reps {
        if ok(r) {
            return Some(r.clone());
        }
        for _ in 0..300 {
            let c = conj(r, &x.random_element(rng));
            if ok(&c) {
                return Some(c);
            }
        }
    }
    None
}

/// `A_5` or `S_4` from random `(2,3,5)` or `(2,3,4)` pairs, a few of each.
fn random_polyhedral(x: &PermGroup, ord: u64, rng: &mut ChaCha8Rng) -> Vec<PermGroup> {
    let k = if ord == 60 { 5 } else { 4 };
    let mut out = Vec::new();
    while out.len() < 6 {
        let (s, t) = (x.random_element(rng), x.random_element(rng));
        if s.order_u64() == 2 && t.order_u64() == 3 && s.mul(&t).order_u64() == k {
            let h = PermGroup::new(x.degree(), vec![s, t]).unwrap();
            if h.order_u64() == Some(ord) {
                out.push(h);
            }
        }
    }
    out
}

fn embeds(x: &PermGroup, xa: &PermGroup, g: &PermGroup, ga: u64) -> bool {
    let l = Limits::default();
    match verify_hypothesis(x, xa, g, &HypothesisOptions::default(), &l) {
        Ok(run) => run.ga.order_u64() == Some(ga) && !run.certificates.is_empty(),
        Err(_) => false,
    }
}

fn meets(x: &PermGroup, a: &PermGroup, b: &PermGroup, m: u64) -> bool {
    let c = check_factorisation(x, a, b, &Limits::default()).unwrap();
    c.is_valid() && c.meet_order == m.into()
}

fn agl32() -> PermGroup {
    let k = make_field(2).unwrap();
    let vecs = all_vectors(&k, 3);
    let dom = Domain::new(vecs.clone(), false);
    let mut gens: Vec<Perm> = sl_generators(&k, 3).iter().map(|m| dom.perm(&k, m).unwrap()).collect();
    gens.push(Perm::from_images(vecs.iter().map(|v| dom.position(&[v[0] ^ 1, v[1], v[2]]).unwrap() as u32).collect()).unwrap());
    let agl = PermGroup::new(8, gens).unwrap();
    assert_eq!(agl.order_u64(), Some(1344));
    agl
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rng = &mut rng;
    let l = Limits::default();
    let section = std::env::args().nth(1).unwrap_or_default();
    let on = |s: &str| section.is_empty() || section == s;

    if on("6711") {
        let agl = agl32();
        let s8 = named_group("S 8").unwrap();
        let g = named_group("gens 8 : (1,2,3,4,5) (1,2) (6,7)").unwrap();
        let s8c: Vec<PermGroup> = (0..8).map(|i| agl.conjugate(&Perm::parse(&format!("({},8)", i + 1), 8).unwrap_or(Perm::identity(8)))).collect();
        let a = find(&s8, &s8c, rng, |a| embeds(&s8, a, &g, 8)).unwrap();
        println!("row5 AGL(3,2) in S8: {}", words(&a, rng));
        println!("AGL(3,2) plain: {}", words(&agl, rng));

        let m11 = named_group("M 11").unwrap();
        let l211 = classes_of(&m11, 660);
        println!("PSL(2,11) on 11 points: {}", words(&l211[0], rng));
        let s11 = named_group("S 11").unwrap();
        let g = named_group("gens 11 : (1,2,3,4,5,6,7,8,9) (1,2) (10,11)").unwrap();
        let t = std::time::Instant::now();
        let a = find(&s11, &l211, rng, |a| {
            intersection(a, &g, &l).unwrap().order_u64() == Some(12)
        })
        .unwrap();
        println!("row6 PSL(2,11) in S11: {} ({:?})", words(&a, rng), t.elapsed());
    }

    if on("class") {
        let x = named_group("PGL 2 11").unwrap();
        let g = x.stabilizer(11).unwrap();
        let a5 = find(&x, &classes_of(&x, 60), rng, |a| embeds(&x, a, &g, 5)).unwrap();
        println!("A5 in PGL(2,11): {}", words(&a5, rng));
    }

    if on("psl") {
        for (q, ord, bspec, m) in [
            (7u64, 24u64, "span X : (1,2,3,4,5,6,7)", 1u64),
            (7, 24, "stab X 8", 3),
            (11, 60, "span X : (1,2,3,4,5,6,7,8,9,10,11)", 1),
            (11, 60, "stab X 12", 5),
            (11, 12, "stab X 12", 1),
            (19, 60, "stab X 20", 3),
            (23, 24, "stab X 24", 1),
        ] {
            let mut r = Resolver::default();
            r.bind("X", named_group(&format!("PSL 2 {q}")).unwrap());
            let x = r.resolve("X").unwrap();
            let b = r.resolve(bspec).unwrap();
            let reps = if x.degree() <= 16 { classes_of(&x, ord) } else { random_polyhedral(&x, ord, rng) };
            let a = find(&x, &reps, rng, |a| meets(&x, a, &b, m));
            match a {
                Some(a) => println!("PSL(2,{q}) order {ord} vs {bspec}: {}", words(&a, rng)),
                None => println!("PSL(2,{q}) order {ord} vs {bspec}: NONE"),
            }
        }
        let x = named_group("PGammaL 2 16").unwrap();
        let mut a5 = None;
        let mut c17 = None;
        while a5.is_none() || c17.is_none() {
            let (s, t) = (x.random_element(rng), x.random_element(rng));
            if s.order_u64() == 17 && c17.is_none() {
                c17 = Some(PermGroup::new(17, vec![s.clone()]).unwrap());
            }
            if s.order_u64() == 2 && t.order_u64() == 3 && s.mul(&t).order_u64() == 5 {
                let h = PermGroup::new(17, vec![s, t]).unwrap();
                if h.order_u64() == Some(60) {
                    a5 = Some(h);
                }
            }
        }
        let norm = |h: &PermGroup| {
            let mut gens = Vec::new();
            let mut acc = h.clone();
            x.for_each_element(1 << 20, |e| {
                if h.is_normalized_by(e) && !acc.contains(e) {
                    gens.push(e.clone());
                    acc = acc.generated_with(&[e.clone()]).unwrap();
                }
            })
            .unwrap();
            acc
        };
        let a = norm(&a5.unwrap());
        let b = norm(&c17.unwrap());
        println!("normalizer orders {:?} {:?}", a.order_u64(), b.order_u64());
        let b = find(&x, &[b], rng, |b| meets(&x, &a, b, 2)).unwrap();
        println!("PGammaL(2,16) A5.4: {}", words(&a, rng));
        println!("PGammaL(2,16) D34.4: {}", words(&b, rng));
    }

    if on("m11") {
        let x = named_group("M 11").unwrap();
        let res = exhaustive_search(&x, &l).unwrap();
        for h in &res.hits {
            let c = &h.certificate;
            println!(
                "M11 |A|={} |B|={} meet={} {}\n    A: {}\n    B: {}",
                c.a_order,
                c.b_order,
                c.meet_order,
                c.meet_tag,
                words(&res.classes.classes[h.a_class].rep, rng),
                words(&h.b, rng)
            );
        }
    }

    if on("m12") {
        let x = named_group("M 12").unwrap();
        let c11 = PermGroup::new(12, vec![Perm::parse("(1,2,3,4,5,6,7,8,9,10,11)", 12).unwrap()]).unwrap();
        let mut n = c11.clone();
        while n.order_u64() != Some(55) {
            let e = x.random_element(rng);
            if c11.is_normalized_by(&e) && !n.contains(&e) {
                n = n.generated_with(&[e]).unwrap();
            }
        }
        let l2 = loop {
            let t = x.random_element(rng);
            let h = n.generated_with(&[t]).unwrap();
            if h.order_u64() == Some(660) {
                break h;
            }
        };
        println!("M12 PSL(2,11) max: {}", words(&l2, rng));
        let mut r = Resolver::default();
        r.bind("X", x.clone());
        r.bind("L", l2.clone());
        for trip in [[10, 11, 12], [1, 2, 12], [1, 11, 12], [2, 5, 12], [1, 2, 3]] {
            let s = format!("setstab X {{{},{},{}}}", trip[0], trip[1], trip[2]);
            let a = r.resolve(&s).unwrap();
            let m2 = format!("meet [setstab X {{{},{}}}] [stab X {}]", trip[0], trip[1], trip[2]);
            let b = r.resolve(&m2).unwrap();
            println!(
                "{s}: order {:?} meet {:?}; {m2}: order {:?} meet {:?}",
                a.order_u64(),
                intersection(&a, &l2, &l).unwrap().order_u64(),
                b.order_u64(),
                intersection(&b, &l2, &l).unwrap().order_u64()
            );
        }
        for p in 6..=12 {
            let s = setwise_stabilizer(&x, &[0, 1, 2, 3, 4, p - 1], &l).unwrap();
            if s.order_u64() == Some(720) {
                println!("hexad {{1,2,3,4,5,{p}}} meet {:?}", intersection(&s, &l2, &l).unwrap().order_u64());
            }
        }
        let reps = subgroup_classes(&l2, &l).unwrap();
        for c in reps.classes {
            if c.rep.is_transitive() {
                let st = c.rep.stabilizer(11).unwrap();
                let tag = arcmaps_core::structure::classify_cyclic_dihedral(&st, &l).unwrap();
                if tag.is_cyclic_or_dihedral() {
                    println!("transitive in L2(11) order {} stab {}: {}", c.order, tag, words(&c.rep, rng));
                }
            }
        }
        let m11 = named_group("M 11").unwrap();
        let l211 = classes_of(&m11, 660);
        let sp = CosetSpace::new(&m11, &l211[0], &l).unwrap();
        let g12 = PermGroup::new(12, sp.induced.clone()).unwrap();
        println!("M11 on 12 points: {}", words(&g12, rng));
    }

    if on("families") {
        for (spec, p) in [("PSL 3 3", 13u64), ("PSL 3 4", 7)] {
            let x = named_group(spec).unwrap();
            let e = loop {
                let e = x.random_element(rng);
                if e.order_u64() == p {
                    break e;
                }
            };
            let c = PermGroup::new(x.degree(), vec![e]).unwrap();
            let mut acc = c.clone();
            x.for_each_element(1 << 20, |g| {
                if c.is_normalized_by(g) && !acc.contains(g) {
                    acc = acc.generated_with(&[g.clone()]).unwrap();
                }
            })
            .unwrap();
            println!("{spec} normalizer of C{p} order {:?}: {}", acc.order_u64(), words(&acc, rng));
        }
    }

    if on("b2hom") {
        let x = named_group("ASL 2 5").unwrap();
        let st = x.stabilizer(0).unwrap();
        let sl23 = loop {
            let (a, b) = (st.random_element(rng), st.random_element(rng));
            if a.order_u64() == 4 && b.order_u64() == 6 {
                let h = PermGroup::new(25, vec![a, b]).unwrap();
                if h.order_u64() == Some(24) {
                    break h;
                }
            }
        };
        let t: Vec<Perm> = x.generators().iter().filter(|g| g.fixed_count() == 0).cloned().collect();
        let b = sl23.generated_with(&t).unwrap();
        println!("5^2:2A4 order {:?}: {}", b.order_u64(), words(&b, rng));
    }

    if on("anexc") {
        let a8 = named_group("A 8").unwrap();
        let agl = agl32();
        for (spec, m) in [
            ("gens 8 : (1,2,3,4,5)(6,7,8)", 1u64),
            ("gens 8 : (1,2,3,4,5)(6,7,8) (2,5)(3,4)", 2),
            ("gens 8 : (1,2,3,4,5)(6,7,8) (2,3,5,4)(7,8)", 4),
        ] {
            let b = named_group(spec).unwrap();
            let b = find(&a8, &[b], rng, |b| meets(&a8, &agl, b, m));
            println!("A8 AGL(3,2) with {spec} meet {m}: {:?}", b.map(|b| words(&b, rng)));
        }
        let a10 = named_group("A 10").unwrap();
        let mut r = Resolver::default();
        r.bind("X", a10.clone());
        let a = r.resolve("meet [gens 10 : (1,2) (1,2,3,4,5) (1,6)(2,7)(3,8)(4,9)(5,10)] [A 10]").unwrap();
        for bs in ["PSL 2 8", "PGammaL 2 8"] {
            let b9 = named_group(bs).unwrap();
            let gens: Vec<Perm> = b9
                .generators()
                .iter()
                .map(|g| Perm::from_images(g.images().iter().copied().chain([9]).collect()).unwrap())
                .collect();
            let b = PermGroup::new(10, gens).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for _ in 0..200 {
                let bc = conj(&b, &a10.random_element(rng));
                let c = check_factorisation(&a10, &a, &bc, &l).unwrap();
                if seen.insert((c.meet_order.clone(), c.meet_tag.to_string())) {
                    println!("A10 (S5 wr S2)&A10 with {bs}: |A|={} |B|={} meet {} {} valid {}: {}", c.a_order, c.b_order, c.meet_order, c.meet_tag, c.is_valid(), words(&bc, rng));
                }
            }
        }
    }

    if on("s6") {
        for spec in ["S 6", "A 6"] {
            let x = named_group(spec).unwrap();
            let res = exhaustive_search(&x, &l).unwrap();
            println!("search {spec}");
            for h in &res.hits {
                let c = &h.certificate;
                println!(
                    "  |A|={} |B|={} meet={} {}\n    A: {}\n    B: {}",
                    c.a_order,
                    c.b_order,
                    c.meet_order,
                    c.meet_tag,
                    words(&res.classes.classes[h.a_class].rep, rng),
                    words(&h.b, rng)
                );
            }
        }
    }
}
