use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::coset::CosetSpace;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{subgroup_classes, SubgroupClassList};
use crate::ops::{intersection, normal_closure, normal_core};
use crate::perm::Perm;
use crate::structure::{classify_cyclic_dihedral, StructureTag};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorisationCertificate {
    pub x_order: BigUint,
    pub a_order: BigUint,
    pub b_order: BigUint,
    pub meet_order: BigUint,
    pub meet_tag: StructureTag,
    pub corefree_a: bool,
    pub corefree_b: bool,
}

impl FactorisationCertificate {
    pub fn order_equation_holds(&self) -> bool {
        &self.a_order * &self.b_order == &self.x_order * &self.meet_order
    }

    pub fn is_valid(&self) -> bool {
        self.order_equation_holds()
            && self.meet_tag.is_cyclic_or_dihedral()
            && self.corefree_a
            && self.corefree_b
    }
}

pub fn is_core_free(x: &PermGroup, a: &PermGroup, limits: &Limits) -> Result<bool> {
    Ok(CosetSpace::new(x, a, limits)?.faithful)
}

pub fn check_factorisation(
    x: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
    limits: &Limits,
) -> Result<FactorisationCertificate> {
    if !a.is_subgroup_of(x) || !b.is_subgroup_of(x) {
        return Err(Error::NotSubgroup);
    }
    let meet = intersection(a, b, limits)?;
    Ok(FactorisationCertificate {
        x_order: x.order().clone(),
        a_order: a.order().clone(),
        b_order: b.order().clone(),
        meet_order: meet.order().clone(),
        meet_tag: classify_cyclic_dihedral(&meet, limits)?,
        corefree_a: is_core_free(x, a, limits)?,
        corefree_b: is_core_free(x, b, limits)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    FlagRegular,
    ArcRegular,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::FlagRegular => write!(f, "FlagRegular"),
            Regularity::ArcRegular => write!(f, "ArcRegular"),
        }
    }
}

/// Witness that the embedding hypothesis holds for one suborbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub alpha: usize,
    pub beta: usize,
    pub suborbit: usize,
    pub h: Perm,
    pub g: Perm,
    pub x_order: BigUint,
    pub xa_order: BigUint,
    pub xab_order: BigUint,
    pub ga_order: u64,
    pub gab_order: u64,
    pub ga_tag: StructureTag,
    pub valency: u64,
    pub vertices: u64,
    pub generated_order: BigUint,
    pub regularity: Regularity,
}

pub fn flag_regularity(cert: &EmbeddingCertificate) -> Regularity {
    if cert.gab_order == 2 {
        Regularity::FlagRegular
    } else {
        Regularity::ArcRegular
    }
}

#[derive(Clone, Debug, Default)]
pub struct HypothesisOptions {
    /// Keep every passing involution instead of the first per suborbit.
    pub all_witnesses: bool,
}

/// Everything computed on the way to the certificates.
#[derive(Clone, Debug)]
pub struct HypothesisRun {
    pub space: CosetSpace,
    pub ga: PermGroup,
    pub ga_tag: StructureTag,
    /// `X = G X_α` by the order equation.
    pub product_ok: bool,
    pub certificates: Vec<EmbeddingCertificate>,
}

/// Some `u ∈ G` with `X_α u = X_α h`, found by enumerating the smaller of `G`, `X_α`.
fn transporter(xa: &PermGroup, g: &PermGroup, h: &Perm, limits: &Limits) -> Result<Option<Perm>> {
    let mut found = None;
    if g.order() <= xa.order() {
        let hinv = h.inverse();
        g.for_each_element(limits.enumeration, |u| {
            if found.is_none() && xa.contains(&u.mul(&hinv)) {
                found = Some(u.clone());
            }
        })?;
    } else {
        xa.for_each_element(limits.enumeration, |a| {
            if found.is_none() {
                let u = a.inverse().mul(h);
                if g.contains(&u) {
                    found = Some(u);
                }
            }
        })?;
    }
    Ok(found)
}

/// Involutions of `G` swapping `α = X_α` and `β = X_α h`, sorted.
pub fn involution_arc_reversers(
    xa: &PermGroup,
    g: &PermGroup,
    ga: &PermGroup,
    h: &Perm,
    limits: &Limits,
) -> Result<Vec<Perm>> {
    let Some(u) = transporter(xa, g, h, limits)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    ga.for_each_element(limits.enumeration, |c| {
        let cand = c.mul(&u);
        if !cand.is_identity() && cand.mul(&cand).is_identity() && xa.contains(&h.mul(&cand)) {
            out.push(cand);
        }
    })?;
    out.sort();
    Ok(out)
}

pub fn verify_hypothesis(
    x: &PermGroup,
    xa: &PermGroup,
    g: &PermGroup,
    opts: &HypothesisOptions,
    limits: &Limits,
) -> Result<HypothesisRun> {
    if !g.is_subgroup_of(x) {
        return Err(Error::NotSubgroup);
    }
    let space = CosetSpace::new(x, xa, limits)?;
    if !space.faithful {
        return Err(Error::BadParams("X is not faithful on the cosets of X_α".into()));
    }
    let ga = intersection(g, xa, limits)?;
    let product_ok = g.order() * xa.order() == x.order() * ga.order();
    let ga_tag = classify_cyclic_dihedral(&ga, limits)?;
    let mut run = HypothesisRun {
        space,
        ga,
        ga_tag,
        product_ok,
        certificates: Vec::new(),
    };
    if !product_ok || !run.ga_tag.is_cyclic_or_dihedral() {
        return Ok(run);
    }
    let ga_order = run.ga.order_u64().expect("gated");
    let vertices = run.space.size() as u64;
    for (si, sub) in run.space.suborbits().iter().enumerate() {
        if sub.point == 0 {
            continue;
        }
        let h = &sub.rep;
        let xah = xa.conjugate(h);
        let xab = intersection(xa, &xah, limits)?;
        let gab = intersection(&run.ga, &xab, limits)?;
        let gab_order = gab.order_u64().expect("gated");
        if xa.order() * gab.order() != BigUint::from(ga_order) * xab.order() {
            continue;
        }
        let valency = (xa.order() / xab.order()).to_u64().unwrap_or(u64::MAX);
        if gab_order > 2 || valency < 3 {
            continue;
        }
        for inv in involution_arc_reversers(xa, g, &run.ga, h, limits)? {
            if !xab.is_normalized_by(&inv) {
                continue;
            }
            let span = xa.generated_with(std::slice::from_ref(&inv))?;
            if span.order() != x.order() {
                continue;
            }
            run.certificates.push(EmbeddingCertificate {
                alpha: 0,
                beta: sub.point,
                suborbit: si,
                h: h.clone(),
                g: inv,
                x_order: x.order().clone(),
                xa_order: xa.order().clone(),
                xab_order: xab.order().clone(),
                ga_order,
                gab_order,
                ga_tag: run.ga_tag.clone(),
                valency,
                vertices,
                generated_order: span.order().clone(),
                regularity: if gab_order == 2 {
                    Regularity::FlagRegular
                } else {
                    Regularity::ArcRegular
                },
            });
            if !opts.all_witnesses {
                break;
            }
        }
    }
    Ok(run)
}

/// Every nontrivial normal subgroup of `X_α` inside `X_αβ` is moved by `g`.
pub fn normal_subgroup_displacement_check(
    xa: &PermGroup,
    xab: &PermGroup,
    g: &Perm,
    limits: &Limits,
) -> Result<bool> {
    let core = normal_core(xa, xab, limits)?;
    if core.is_trivial() {
        return Ok(true);
    }
    // Normal closures of single elements, then all joins of them.
    let mut normals: Vec<PermGroup> = Vec::new();
    let add = |n: PermGroup, normals: &mut Vec<PermGroup>| {
        if !normals
            .iter()
            .any(|m| m.order() == n.order() && n.is_subgroup_of(m))
        {
            normals.push(n);
        }
    };
    for e in core.elements(limits.enumeration)? {
        if !e.is_identity() {
            add(normal_closure(xa, &[e]), &mut normals);
        }
    }
    let mut i = 0;
    while i < normals.len() {
        for j in 0..i {
            let joined = normals[i].generated_with(normals[j].generators())?;
            add(joined, &mut normals);
        }
        i += 1;
    }
    Ok(normals.iter().all(|n| !n.is_normalized_by(g)))
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub a_class: usize,
    pub b_class: usize,
    /// The conjugate of the `b_class` representative paired with the `a_class` one.
    pub b: PermGroup,
    pub certificate: FactorisationCertificate,
    /// `A` as vertex stabilizer, `B` as the map group.
    pub embeddings_ab: Vec<EmbeddingCertificate>,
    /// `B` as vertex stabilizer, `A` as the map group.
    pub embeddings_ba: Vec<EmbeddingCertificate>,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub classes: SubgroupClassList,
    pub hits: Vec<SearchHit>,
}

/// All cyclic/dihedral core-free factorisations up to conjugacy and exchange,
/// each followed by the embedding check in both directions.
pub fn exhaustive_search(x: &PermGroup, limits: &Limits) -> Result<SearchResult> {
    let classes = subgroup_classes(x, limits)?;
    let n = x.order_u64().expect("lattice gated");
    let cs = &classes.classes;
    let mut corefree: Vec<Option<bool>> = vec![None; cs.len()];
    let mut spaces: Vec<Option<CosetSpace>> = (0..cs.len()).map(|_| None).collect();
    let mut hits = Vec::new();
    for i in 0..cs.len() {
        for j in 0..=i {
            let (oa, ob) = (cs[i].order, cs[j].order);
            if oa == n || ob == n || (oa * ob) % n != 0 {
                continue;
            }
            let k = oa * ob / n;
            if k > ob {
                continue;
            }
            let a = &cs[i].rep;
            if spaces[j].is_none() {
                let norm = normalizer_by_enumeration(x, &cs[j].rep, n / cs[j].length, limits)?;
                spaces[j] = Some(CosetSpace::new(x, &norm, limits)?);
            }
            let space = spaces[j].as_ref().unwrap();
            // Conjugates of B up to conjugation by A: one per A-orbit on the class.
            for t in orbit_reps(space, a) {
                let b = cs[j].rep.conjugate(space.rep(t));
                let meet = intersection(a, &b, limits)?;
                if meet.order_u64() != Some(k) {
                    continue;
                }
                let tag = classify_cyclic_dihedral(&meet, limits)?;
                if !tag.is_cyclic_or_dihedral() {
                    continue;
                }
                for c in [i, j] {
                    if corefree[c].is_none() {
                        corefree[c] = Some(is_core_free(x, &cs[c].rep, limits)?);
                    }
                }
                let cert = FactorisationCertificate {
                    x_order: x.order().clone(),
                    a_order: a.order().clone(),
                    b_order: b.order().clone(),
                    meet_order: meet.order().clone(),
                    meet_tag: tag,
                    corefree_a: corefree[i].unwrap(),
                    corefree_b: corefree[j].unwrap(),
                };
                if !cert.is_valid() {
                    continue;
                }
                let opts = HypothesisOptions::default();
                let embeddings_ab = verify_hypothesis(x, a, &b, &opts, limits)?.certificates;
                // With equal classes the swapped pair is another orbit representative.
                let embeddings_ba = if i == j {
                    Vec::new()
                } else {
                    verify_hypothesis(x, &b, a, &opts, limits)?.certificates
                };
                hits.push(SearchHit {
                    a_class: i,
                    b_class: j,
                    b,
                    certificate: cert,
                    embeddings_ab,
                    embeddings_ba,
                });
            }
        }
    }
    Ok(SearchResult { classes, hits })
}

/// `N_X(B)`, grown from `B` until it reaches the known order.
fn normalizer_by_enumeration(x: &PermGroup, b: &PermGroup, order: u64, limits: &Limits) -> Result<PermGroup> {
    let mut norm = b.clone();
    if norm.order_u64() == Some(order) {
        return Ok(norm);
    }
    let mut err = None;
    x.for_each_element(limits.enumeration, |g| {
        if err.is_some() || norm.order_u64() == Some(order) || norm.contains(g) || !b.is_normalized_by(g) {
            return;
        }
        match norm.generated_with(std::slice::from_ref(g)) {
            Ok(m) => norm = m,
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(norm),
    }
}

/// Smallest point of each orbit of `a` on the cosets.
fn orbit_reps(space: &CosetSpace, a: &PermGroup) -> Vec<usize> {
    let gens: Vec<Perm> = a.generators().iter().map(|g| space.induced_perm(g)).collect();
    let mut seen = vec![false; space.size()];
    let mut reps = Vec::new();
    for p in 0..space.size() {
        if seen[p] {
            continue;
        }
        reps.push(p);
        seen[p] = true;
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            for g in &gens {
                let r = g.apply(q);
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
    }
    reps
}

/// `(|A|, |B|, |A∩B|, tag)` with `|A| >= |B|`.
pub fn factorisation_signature(c: &FactorisationCertificate) -> (BigUint, BigUint, BigUint, StructureTag) {
    let (a, b) = if c.a_order >= c.b_order {
        (c.a_order.clone(), c.b_order.clone())
    } else {
        (c.b_order.clone(), c.a_order.clone())
    };
    (a, b, c.meet_order.clone(), c.meet_tag.clone())
}

pub fn index(x: &PermGroup, a: &PermGroup) -> BigUint {
    if a.order().is_one() {
        x.order().clone()
    } else {
        x.order() / a.order()
    }
}
