use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rustc_hash::FxHashMap;

use crate::error::{gate, Error, Result};
use crate::group::PermGroup;
use crate::ops::normal_core;
use crate::perm::Perm;
use crate::Limits;

/// Index above which faithfulness is decided through the normal core
/// instead of a stabilizer chain on the coset space.
const DIRECT_FAITHFUL_LIMIT: usize = 5000;

/// Right cosets `A x` of `A` in `X`, materialized by breadth-first expansion.
///
/// Point 0 is the coset `A` itself and its representative is the identity.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub x: PermGroup,
    pub a: PermGroup,
    key_base: Vec<usize>,
    reps: Vec<Perm>,
    lookup: FxHashMap<Box<[u32]>, u32>,
    /// Images of `x.generators()` on the coset space.
    pub induced: Vec<Perm>,
    pub faithful: bool,
    /// Order of the image of `X` on the cosets.
    pub image_order: BigUint,
}

/// An orbit of `A` on the coset space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suborbit {
    /// First-discovered coset in the orbit.
    pub point: usize,
    /// Its representative `h`, so the point is `α^h`.
    pub rep: Perm,
    pub size: usize,
    /// Index of the suborbit containing `α^(h^-1)`.
    pub paired: usize,
}

impl CosetSpace {
    pub fn new(x: &PermGroup, a: &PermGroup, limits: &Limits) -> Result<CosetSpace> {
        if x.degree() != a.degree() {
            return Err(Error::DegreeMismatch(x.degree(), a.degree()));
        }
        if !a.is_subgroup_of(x) {
            return Err(Error::NotSubgroup);
        }
        let index = x.order() / a.order();
        let n = match index.to_u64() {
            Some(n) if n <= limits.coset_index => n as usize,
            _ => return Err(gate("coset action", &index, limits.coset_index)),
        };
        let mut space = CosetSpace {
            x: x.clone(),
            a: a.clone(),
            key_base: x.base(),
            reps: Vec::with_capacity(n),
            lookup: FxHashMap::default(),
            induced: Vec::new(),
            faithful: false,
            image_order: BigUint::one(),
        };
        let gens = x.generators();
        let mut images: Vec<Vec<u32>> = vec![Vec::with_capacity(n); gens.len()];
        let id = Perm::identity(x.degree());
        let k = space.key(&id);
        space.lookup.insert(k, 0);
        space.reps.push(id);
        let mut i = 0;
        while i < space.reps.len() {
            for (gi, s) in gens.iter().enumerate() {
                let y = space.reps[i].mul(s);
                let key = space.key(&y);
                let next = space.reps.len() as u32;
                let j = *space.lookup.entry(key).or_insert(next);
                if j == next {
                    space.reps.push(y);
                }
                images[gi].push(j);
            }
            i += 1;
        }
        debug_assert_eq!(space.reps.len(), n);
        space.induced = images.into_iter().map(Perm::from_images_unchecked).collect();
        if n <= DIRECT_FAITHFUL_LIMIT {
            let img = PermGroup::build(
                n,
                space.induced.clone(),
                &crate::BuildOptions {
                    seed: x.seed(),
                    ..Default::default()
                },
            )?;
            space.image_order = img.order().clone();
        } else {
            let core = normal_core(x, a, limits)?;
            space.image_order = x.order() / core.order();
        }
        space.faithful = &space.image_order == x.order();
        Ok(space)
    }

    /// Minimal element of the coset `A y` in base-image order.
    fn canonical(&self, y: &Perm) -> Perm {
        let mut y = y.clone();
        for l in self.a.levels() {
            let mut best = l.orbit[0];
            let mut best_img = y.apply(best);
            for &o in &l.orbit[1..] {
                let v = y.apply(o);
                if v < best_img {
                    best_img = v;
                    best = o;
                }
            }
            if best != l.base {
                y = l.rep(best).unwrap().mul(&y);
            }
        }
        y
    }

    fn key(&self, y: &Perm) -> Box<[u32]> {
        let c = self.canonical(y);
        self.key_base.iter().map(|&b| c.apply(b) as u32).collect()
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, i: usize) -> &Perm {
        &self.reps[i]
    }

    /// Index of the coset `A y`.
    pub fn locate(&self, y: &Perm) -> usize {
        self.lookup[&self.key(y)] as usize
    }

    /// Image of coset `i` under `g`.
    pub fn act(&self, i: usize, g: &Perm) -> usize {
        self.locate(&self.reps[i].mul(g))
    }

    /// Action of an arbitrary element of `X` on the cosets.
    pub fn induced_perm(&self, g: &Perm) -> Perm {
        Perm::from_images_unchecked((0..self.size()).map(|i| self.act(i, g) as u32).collect())
    }

    /// Orbits of `A` on the cosets, ordered by first-discovered point.
    pub fn suborbits(&self) -> Vec<Suborbit> {
        let n = self.size();
        let agens: Vec<Perm> = self.a.generators().iter().map(|g| self.induced_perm(g)).collect();
        let mut which = vec![u32::MAX; n];
        let mut subs: Vec<(usize, usize)> = Vec::new();
        for s in 0..n {
            if which[s] != u32::MAX {
                continue;
            }
            let id = subs.len() as u32;
            which[s] = id;
            let mut q = VecDeque::from([s]);
            let mut size = 1;
            while let Some(p) = q.pop_front() {
                for g in &agens {
                    let t = g.apply(p);
                    if which[t] == u32::MAX {
                        which[t] = id;
                        size += 1;
                        q.push_back(t);
                    }
                }
            }
            subs.push((s, size));
        }
        subs.iter()
            .map(|&(point, size)| {
                let h = self.reps[point].clone();
                let back = self.locate(&h.inverse());
                Suborbit {
                    point,
                    rep: h,
                    size,
                    paired: which[back] as usize,
                }
            })
            .collect()
    }

    /// Points of the suborbit containing `point`.
    pub fn suborbit_points(&self, point: usize) -> Vec<usize> {
        let agens: Vec<Perm> = self.a.generators().iter().map(|g| self.induced_perm(g)).collect();
        crate::group::orbit_under(&agens, self.size(), point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Perm {
        Perm::parse(s, d).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        PermGroup::new(n, vec![p("(1,2)", n), c]).unwrap()
    }

    #[test]
    fn s4_on_s3_cosets() {
        let s4 = sym(4);
        let s3 = s4.stabilizer(3).unwrap();
        let cs = CosetSpace::new(&s4, &s3, &Limits::default()).unwrap();
        assert_eq!(cs.size(), 4);
        assert!(cs.faithful);
        assert!(cs.rep(0).is_identity());
        let mut sizes: Vec<usize> = cs.suborbits().iter().map(|s| s.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);
    }

    #[test]
    fn s4_on_a4_cosets_not_faithful() {
        let s4 = sym(4);
        let a4 = PermGroup::new(4, vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        let cs = CosetSpace::new(&s4, &a4, &Limits::default()).unwrap();
        assert_eq!(cs.size(), 2);
        assert!(!cs.faithful);
        assert_eq!(cs.image_order, BigUint::from(2u32));
    }

    #[test]
    fn not_a_subgroup() {
        let a4 = PermGroup::new(4, vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        let c = PermGroup::new(4, vec![p("(1,2)", 4)]).unwrap();
        assert!(matches!(CosetSpace::new(&a4, &c, &Limits::default()), Err(Error::NotSubgroup)));
    }

    #[test]
    fn coset_gate() {
        let s6 = sym(6);
        let t = PermGroup::trivial(6);
        let lim = Limits {
            coset_index: 100,
            ..Limits::default()
        };
        assert!(matches!(CosetSpace::new(&s6, &t, &lim), Err(Error::GateExceeded { .. })));
    }
}
