//! `SO_5(3)` on the 80 nonzero singular vectors of `Q(x) = Σ x_i^2` over `F_3`,
//! and the graphs `Σ`, `Γ`, `Γ̂` built from it.

use arcmaps_core::ops::derived_subgroup;
use arcmaps_core::{Error, Limits, Perm, PermGroup, Result};
use arcmaps_graph::{bipartite_double, canonical_form, invariants, iso, lex_double, quotient, Graph};
use num_bigint::BigUint;

use crate::linear::{all_vectors, det, dot, mat_mul, normalize, Domain, Matrix, Vector};
use crate::{make_field, SmallField};

pub const SO53_ORDER: u64 = 51840;

fn q_form(k: &SmallField, v: &[u8]) -> u8 {
    dot(k, v, v)
}

/// Reflection in a nonsingular `a`: `x ↦ x − (B(x,a)/Q(a)) a` with `B = 2·dot`.
fn reflection(k: &SmallField, a: &[u8]) -> Matrix {
    let qa_inv = k.inv(q_form(k, a));
    let two = k.add(1, 1);
    (0..5)
        .map(|i| {
            (0..5)
                .map(|j| {
                    let t = k.mul(k.mul(two, k.mul(a[i], a[j])), qa_inv);
                    k.sub(u8::from(i == j), t)
                })
                .collect()
        })
        .collect()
}

fn signed_permutation(perm: [usize; 5], signs: [u8; 5]) -> Matrix {
    let mut m = vec![vec![0u8; 5]; 5];
    for i in 0..5 {
        m[i][perm[i]] = signs[i];
    }
    m
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct O53Suite {
    pub field: SmallField,
    /// The 80 nonzero singular vectors, lexicographic.
    pub vectors: Vec<Vector>,
    /// The 40 singular 1-spaces, normalized, lexicographic.
    pub points: Vec<Vector>,
    pub matrices: Vec<Matrix>,
    /// `SO_5(3)` on the vectors.
    pub x: PermGroup,
    /// `Ω_5(3)`, the derived subgroup.
    pub x0: PermGroup,
    /// Signed permutation matrices of determinant 1: `2^4.S_5`.
    pub monomial: PermGroup,
    pub sigma: Graph,
    pub gamma: Graph,
    /// `v ↦ −v`.
    pub tau: Perm,
    /// Stabilizer of vector 0 in `X`.
    pub xv: PermGroup,
    /// The two `(X_0)_v`-orbits of length 12 inside the 24 neighbours of vector 0.
    pub split: (Vec<usize>, Vec<usize>),
    /// `X_0`-orbital through `(0, split.0[0])` and its reverse.
    pub delta: Vec<(usize, usize)>,
    pub delta_prime: Vec<(usize, usize)>,
    pub gamma_hat: Graph,
    /// Side swap `u⁺ ↔ u⁻` on the 160 vertices.
    pub rho: Perm,
    /// Involution of `X_v \ X_0` exchanging the two 12-orbits.
    pub swap: Perm,
}

pub fn o53_suite() -> Result<O53Suite> {
    let k = make_field(3)?;
    let vectors: Vec<Vector> = all_vectors(&k, 5)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0) && q_form(&k, v) == 0)
        .collect();
    let points: Vec<Vector> = vectors.iter().filter(|v| normalize(&k, v) == **v).cloned().collect();
    if vectors.len() != 80 || points.len() != 40 {
        return Err(Error::BadParams("singular vector count".into()));
    }
    let domain = Domain::new(vectors.clone(), false);
    let m1 = k.neg(1);
    let mut matrices = vec![
        signed_permutation([1, 2, 3, 4, 0], [1, 1, 1, 1, 1]),
        signed_permutation([1, 0, 2, 3, 4], [m1, 1, 1, 1, 1]),
        signed_permutation([0, 1, 2, 3, 4], [m1, m1, 1, 1, 1]),
    ];
    let perms = |ms: &[Matrix]| ms.iter().map(|m| domain.perm(&k, m)).collect::<Result<Vec<_>>>();
    let monomial = PermGroup::new(80, perms(&matrices)?)?;
    if monomial.order_u64() != Some(1920) {
        return Err(Error::BadParams("signed permutation group order".into()));
    }
    // Directed search: the first product of two reflections that, with the
    // monomial group, generates a group of the right order.
    let nonsingular: Vec<Vector> = all_vectors(&k, 5)
        .into_iter()
        .filter(|v| q_form(&k, v) != 0 && normalize(&k, v) == *v)
        .collect();
    let target = BigUint::from(SO53_ORDER);
    let mut x = None;
    'search: for a in &nonsingular {
        for b in &nonsingular {
            let r = mat_mul(&k, &reflection(&k, a), &reflection(&k, b));
            let p = domain.perm(&k, &r)?;
            if monomial.contains(&p) {
                continue;
            }
            let g = monomial.generated_with(std::slice::from_ref(&p))?;
            if g.order() == &target {
                matrices.push(r);
                x = Some(g);
                break 'search;
            }
        }
    }
    let x = x.ok_or_else(|| Error::BadParams("no generating reflection pair".into()))?;
    for m in &matrices {
        debug_assert_eq!(det(&k, m), 1);
    }
    let x0 = derived_subgroup(&x);

    let sigma = Graph::from_edges(
        40,
        (0..40).flat_map(|i| (i + 1..40).map(move |j| (i, j))).filter(|&(i, j)| dot(&k, &points[i], &points[j]) == 0),
    )?;
    let neg = |v: &Vector| -> Vector { v.iter().map(|&c| k.neg(c)).collect() };
    let gamma = Graph::from_edges(
        80,
        (0..80)
            .flat_map(|i| (i + 1..80).map(move |j| (i, j)))
            .filter(|&(i, j)| dot(&k, &vectors[i], &vectors[j]) == 0 && vectors[j] != neg(&vectors[i])),
    )?;
    let tau = Perm::from_images(vectors.iter().map(|v| domain.position(&neg(v)).unwrap() as u32).collect())?;

    let xv = x.stabilizer(0)?;
    let x0v = x0.stabilizer(0)?;
    let nbrs: Vec<usize> = gamma.neighbors(0).iter().map(|&u| u as usize).collect();
    let mut halves: Vec<Vec<usize>> = Vec::new();
    for &u in &nbrs {
        if halves.iter().all(|h| !h.contains(&u)) {
            let mut o = x0v.orbit(u)?;
            o.sort_unstable();
            halves.push(o);
        }
    }
    if halves.len() != 2 {
        return Err(Error::BadParams(format!("expected two halves, got {}", halves.len())));
    }
    let split = (halves[0].clone(), halves[1].clone());
    let delta = orbital(&x0, 0, split.0[0]);
    let mut delta_prime: Vec<(usize, usize)> = delta.iter().map(|&(u, w)| (w, u)).collect();
    delta_prime.sort_unstable();
    let gamma_hat = bipartite_double(80, &delta)?;
    let rho = Perm::from_images((0..160u32).map(|v| (v + 80) % 160).collect())?;

    let mut swap = None;
    xv.for_each_element(1_000_000, |e| {
        if swap.is_none() && e.order_u64() == 2 && !x0.contains(e) && split.0.iter().all(|&u| split.1.contains(&e.apply(u))) {
            swap = Some(e.clone());
        }
    })?;
    let swap = swap.ok_or_else(|| Error::BadParams("no swapping involution".into()))?;
    Ok(O53Suite {
        field: k,
        vectors,
        points,
        matrices,
        x,
        x0,
        monomial,
        sigma,
        gamma,
        tau,
        xv,
        split,
        delta,
        delta_prime,
        gamma_hat,
        rho,
        swap,
    })
}

fn orbital(g: &PermGroup, a: usize, b: usize) -> Vec<(usize, usize)> {
    let mut seen = std::collections::BTreeSet::from([(a, b)]);
    let mut todo = vec![(a, b)];
    while let Some((u, w)) = todo.pop() {
        for s in g.generators() {
            let img = (s.apply(u), s.apply(w));
            if seen.insert(img) {
                todo.push(img);
            }
        }
    }
    seen.into_iter().collect()
}

/// `x` acting on both sides of the 160 vertices.
fn diagonal(x: &Perm) -> Perm {
    let n = x.degree();
    Perm::from_images_unchecked((0..2 * n).map(|v| (x.apply(v % n) + n * (v / n)) as u32).collect())
}

impl O53Suite {
    /// Index of the singular point spanned by vector `i`.
    pub fn point_of(&self, i: usize) -> usize {
        let p = normalize(&self.field, &self.vectors[i]);
        self.points.iter().position(|x| *x == p).expect("singular")
    }

    /// `⟨X_0, ρ g⟩` on the 160 vertices of `Γ̂`.
    pub fn hat_group(&self) -> Result<PermGroup> {
        let mut gens: Vec<Perm> = self.x0.generators().iter().map(diagonal).collect();
        gens.push(self.rho.mul(&diagonal(&self.swap)));
        PermGroup::new(160, gens)
    }

    pub fn verify(&self, limits: &Limits) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        let mut check = |name, passed: bool, detail: String| out.push(Check { name, passed, detail });

        let si = invariants(&self.sigma);
        check("Sigma is SRG(40,12,2,4)", si.srg == Some((40, 12, 2, 4)), format!("{si}"));

        check(
            "X is SO_5(3) of order 51840",
            self.x.order_u64() == Some(SO53_ORDER) && self.x0.order_u64() == Some(SO53_ORDER / 2),
            format!("|X|={} |X0|={}", self.x.order(), self.x0.order()),
        );

        let mut sizes: Vec<usize> = self.xv.orbits().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        check("X_v orbit sizes 1,1,24,27,27", sizes == [1, 1, 24, 27, 27], format!("{sizes:?}"));

        let gi = invariants(&self.gamma);
        let lex = lex_double(&self.sigma);
        let class: Vec<usize> = (0..80).map(|i| self.point_of(i)).collect();
        let quotient_ok = quotient(&self.gamma, &class)? == self.sigma;
        check(
            "Gamma has valency 24 and quotient Sigma",
            gi.valency() == Some(24) && quotient_ok,
            format!("{gi}"),
        );
        check("Gamma is isomorphic to Sigma[2.K_1]", iso(&self.gamma, &lex, limits)?, String::new());

        let commutes = self.x.generators().iter().all(|g| g.mul(&self.tau) == self.tau.mul(g));
        check(
            "tau centralizes X and is not in X",
            commutes && !self.x.contains(&self.tau) && self.gamma.is_automorphism(&self.tau),
            String::new(),
        );

        let self_paired = self.delta.binary_search(&(self.split.0[0], 0)).is_ok();
        let paired_half: Vec<usize> = self.delta_prime.iter().filter(|a| a.0 == 0).map(|a| a.1).collect();
        check(
            "Delta and Delta' are paired, not self-paired",
            !self_paired && paired_half == self.split.1 && self.split.0.len() == 12 && self.split.1.len() == 12,
            format!("|Delta|={}", self.delta.len()),
        );

        let hi = invariants(&self.gamma_hat);
        check(
            "Gamma-hat: 160 vertices, valency 12, bipartite, connected",
            hi.n == 160 && hi.valency() == Some(12) && hi.bipartite.is_some() && hi.connected,
            format!("{hi}"),
        );

        let h = self.hat_group()?;
        let autos = h.generators().iter().all(|g| self.gamma_hat.is_automorphism(g));
        let stab = h.stabilizer(0)?;
        let nbrs: Vec<usize> = self.gamma_hat.neighbors(0).iter().map(|&u| u as usize).collect();
        let local = stab.orbit(nbrs[0])?;
        let mut local_sorted = local.clone();
        local_sorted.sort_unstable();
        check(
            "<X_0, rho g> is arc-transitive on Gamma-hat",
            autos && h.is_transitive() && local_sorted == nbrs,
            format!("|<X_0, rho g>|={}", h.order()),
        );
        Ok(out)
    }

    /// `|Aut(Γ)|`, reported only.
    pub fn gamma_automorphism_order(&self, limits: &Limits) -> Result<BigUint> {
        let cf = canonical_form(&self.gamma, limits)?;
        Ok(PermGroup::new(80, cf.automorphisms)?.order().clone())
    }
}
