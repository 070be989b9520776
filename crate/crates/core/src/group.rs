use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{gate, Error, Result};
use crate::perm::Perm;

const ABSENT: u32 = u32::MAX;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
pub struct Level {
    pub base: usize,
    /// Indices into the strong generating set; all fix the earlier base points.
    pub gens: Vec<usize>,
    /// Fundamental orbit in discovery order.
    pub orbit: Vec<usize>,
    slot: Vec<u32>,
    reps: Vec<Perm>,
    reps_inv: Vec<Perm>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut slot = vec![ABSENT; degree];
        slot[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Perm::identity(degree)],
            reps_inv: vec![Perm::identity(degree)],
        }
    }

    /// `u` with `base^u = x`, if `x` is in the orbit.
    pub fn rep(&self, x: usize) -> Option<&Perm> {
        match self.slot[x] {
            ABSENT => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.slot[x] != ABSENT
    }

    /// Extends the orbit after new generators were appended.
    fn rebuild(&mut self, strong: &[Perm]) {
        let mut i = 0;
        // Re-scan the whole orbit so new generators reach old points.
        while i < self.orbit.len() {
            let x = self.orbit[i];
            let ux = self.slot[x] as usize;
            for &s in &self.gens {
                let y = strong[s].apply(x);
                if self.slot[y] == ABSENT {
                    let u = self.reps[ux].mul(&strong[s]);
                    self.slot[y] = self.reps.len() as u32;
                    self.reps_inv.push(u.inverse());
                    self.reps.push(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

static DEFAULT_SEED: AtomicU64 = AtomicU64::new(0);

/// Seed used by `BuildOptions::default()`; subgroups inherit the seed of
/// their parent. Set once at startup.
pub fn set_default_seed(seed: u64) {
    DEFAULT_SEED.store(seed, AtomicOrdering::Relaxed);
}

/// Construction parameters for a stabilizer chain.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub seed: u64,
    pub base_prefix: Vec<usize>,
    /// A known upper bound that is also attained; stops the random phase early
    /// and makes the deterministic check unnecessary.
    pub known_order: Option<BigUint>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            seed: DEFAULT_SEED.load(AtomicOrdering::Relaxed),
            base_prefix: Vec::new(),
            known_order: None,
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
    order: BigUint,
    seed: u64,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::build(degree, gens, &BuildOptions::default())
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![]).expect("trivial group")
    }

    pub fn build(degree: usize, gens: Vec<Perm>, opts: &BuildOptions) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        for &b in &opts.base_prefix {
            if b >= degree {
                return Err(Error::PointOutOfRange {
                    point: b + 1,
                    degree,
                });
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut g = PermGroup {
            degree,
            gens: gens.clone(),
            strong: Vec::new(),
            levels: opts
                .base_prefix
                .iter()
                .map(|&b| Level::new(b, degree))
                .collect(),
            order: BigUint::one(),
            seed: opts.seed,
        };
        for h in &gens {
            g.absorb(h.clone());
        }
        if gens.is_empty() {
            return Ok(g);
        }
        g.random_phase(opts);
        if opts.known_order.as_ref() == Some(&g.order) || g.reached_symmetric_bound() {
            return Ok(g);
        }
        g.verify();
        Ok(g)
    }

    fn recompute_order(&mut self) {
        self.order = self
            .levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    /// Order equals the order of Sym or Alt on the moved points: nothing larger exists.
    fn reached_symmetric_bound(&self) -> bool {
        let mut moved = vec![false; self.degree];
        for g in &self.gens {
            for x in g.moved_points() {
                moved[x] = true;
            }
        }
        let m = moved.iter().filter(|&&b| b).count();
        let fact = factorial(m);
        if self.order == fact {
            return true;
        }
        let all_even = self.gens.iter().all(|g| g.sign() == 1);
        all_even && m >= 2 && &self.order * 2u32 == fact
    }

    /// Sifts `g` from `level`; returns the residue and the level at which it stopped.
    pub fn sift_from(&self, g: &Perm, level: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(level) {
            let x = h.apply(l.base);
            match l.slot[x] {
                ABSENT => return (h, i),
                s => {
                    if s != 0 {
                        h = h.mul(&l.reps_inv[s as usize]);
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    /// Adds a residue as a strong generator if nontrivial; returns whether it did.
    fn absorb(&mut self, g: Perm) -> bool {
        let (h, j) = self.sift_from(&g, 0);
        if h.is_identity() {
            return false;
        }
        self.add_strong(h, j);
        true
    }

    /// `h` fixes the first `j` base points and is not sifted through level `j`.
    fn add_strong(&mut self, h: Perm, j: usize) {
        if j == self.levels.len() {
            let b = h.moved_points().next().expect("nontrivial residue");
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(h);
        for i in 0..=j {
            self.levels[i].gens.push(idx);
        }
        for i in 0..=j {
            let strong = &self.strong;
            self.levels[i].rebuild(strong);
        }
        self.recompute_order();
    }

    fn random_phase(&mut self, opts: &BuildOptions) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut slots: Vec<Perm> = self.gens.clone();
        while slots.len() < 10 {
            let k = slots.len() % self.gens.len();
            slots.push(self.gens[k].clone());
        }
        let mut acc = Perm::identity(self.degree);
        let step = |slots: &mut Vec<Perm>, acc: &mut Perm, rng: &mut ChaCha8Rng| {
            let n = slots.len();
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            slots[i] = if rng.gen_bool(0.5) {
                slots[i].mul(&slots[j])
            } else {
                slots[j].mul(&slots[i])
            };
            *acc = acc.mul(&slots[i]);
            acc.clone()
        };
        for _ in 0..40 {
            step(&mut slots, &mut acc, &mut rng);
        }
        let mut quiet = 0;
        while quiet < 24 {
            if let Some(k) = &opts.known_order {
                if &self.order >= k {
                    return;
                }
            }
            let r = step(&mut slots, &mut acc, &mut rng);
            if self.absorb(r) {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
        if let Some(k) = &opts.known_order {
            // Keep going until the known order is reached; a wrong bound
            // falls through to the deterministic check.
            let mut budget = 100_000;
            while &self.order < k && budget > 0 {
                budget -= 1;
                let r = step(&mut slots, &mut acc, &mut rng);
                self.absorb(r);
            }
        }
    }

    /// Deterministic Schreier generator check, bottom level first.
    fn verify(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            let mut restart = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                let x = self.levels[lvl].orbit[oi];
                for gi in 0..self.levels[lvl].gens.len() {
                    let s = self.levels[lvl].gens[gi];
                    let l = &self.levels[lvl];
                    let y = self.strong[s].apply(x);
                    let sch = l.reps[l.slot[x] as usize]
                        .mul(&self.strong[s])
                        .mul(&l.reps_inv[l.slot[y] as usize]);
                    if sch.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(&sch, lvl + 1);
                    if !h.is_identity() {
                        self.add_strong(h, j);
                        restart = Some(self.levels.len());
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(r) => i = r,
                None => i -= 1,
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (h, j) = self.sift_from(p, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn membership(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.contains(p))
    }

    /// Rebuilds with `prefix` leading the base, keeping the order.
    pub fn with_base_prefix(&self, prefix: &[usize]) -> PermGroup {
        if self.levels.len() >= prefix.len()
            && self.levels.iter().zip(prefix).all(|(l, &b)| l.base == b)
        {
            return self.clone();
        }
        let opts = BuildOptions {
            seed: self.seed,
            base_prefix: prefix.to_vec(),
            known_order: Some(self.order.clone()),
        };
        let mut g = PermGroup::build(self.degree, self.strong.clone(), &opts)
            .expect("rebuild of a valid group");
        g.gens = self.gens.clone();
        g
    }

    /// The group of the chain from `level` down, i.e. the pointwise
    /// stabilizer of the first `level` base points.
    pub fn chain_suffix(&self, level: usize) -> PermGroup {
        let keep: Vec<usize> = if level < self.levels.len() {
            self.levels[level].gens.clone()
        } else {
            Vec::new()
        };
        let mut remap = vec![usize::MAX; self.strong.len()];
        let strong: Vec<Perm> = keep
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                remap[s] = i;
                self.strong[s].clone()
            })
            .collect();
        let levels: Vec<Level> = self.levels[level.min(self.levels.len())..]
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.gens = l.gens.iter().map(|&s| remap[s]).collect();
                l
            })
            .collect();
        let mut g = PermGroup {
            degree: self.degree,
            gens: strong.clone(),
            strong,
            levels,
            order: BigUint::one(),
            seed: self.seed,
        };
        g.recompute_order();
        g
    }

    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        Ok(orbit_under(&self.gens, self.degree, point))
    }

    /// Orbits as sorted point lists, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_under(&self.gens, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || orbit_under(&self.gens, self.degree, 0).len() == self.degree
    }

    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange {
                point: point + 1,
                degree: self.degree,
            });
        }
        let g = self.with_base_prefix(&[point]);
        let s = g.chain_suffix(1);
        debug_assert_eq!(
            s.order.clone() * BigUint::from(g.levels[0].orbit.len()),
            self.order
        );
        Ok(s)
    }

    /// Pointwise stabilizer of a sequence of points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let g = self.with_base_prefix(points);
        g.chain_suffix(points.len())
    }

    /// Subgroup generated by `gens`, which must all lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if !self.membership(g)? {
                return Err(Error::NotSubgroup);
            }
        }
        PermGroup::build(
            self.degree,
            gens,
            &BuildOptions {
                seed: self.seed,
                ..Default::default()
            },
        )
    }

    pub fn generated_with(&self, extra: &[Perm]) -> Result<PermGroup> {
        let mut gens = self.gens.clone();
        for e in extra {
            if e.degree() != self.degree {
                return Err(Error::DegreeMismatch(self.degree, e.degree()));
            }
            gens.push(e.clone());
        }
        PermGroup::build(
            self.degree,
            gens,
            &BuildOptions {
                seed: self.seed,
                ..Default::default()
            },
        )
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// `x^-1 H x` membership without building the conjugate.
    pub fn conjugate_contains(&self, x: &Perm, p: &Perm) -> bool {
        self.contains(&p.conjugate_by(&x.inverse()))
    }

    /// The conjugate subgroup `x^-1 H x`.
    pub fn conjugate(&self, x: &Perm) -> PermGroup {
        let gens = self.gens.iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::build(
            self.degree,
            gens,
            &BuildOptions {
                seed: self.seed,
                known_order: Some(self.order.clone()),
                ..Default::default()
            },
        )
        .expect("conjugate")
    }

    pub fn is_normalized_by(&self, x: &Perm) -> bool {
        self.gens.iter().all(|g| self.contains(&g.conjugate_by(x)))
    }

    /// Uniform random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for l in self.levels.iter().rev() {
            let k = rng.gen_range(0..l.orbit.len());
            g = g.mul(l.rep(l.orbit[k]).unwrap());
        }
        g
    }

    fn check_enumeration(&self, limit: u64) -> Result<u64> {
        match self.order.to_u64() {
            Some(n) if n <= limit => Ok(n),
            _ => Err(gate("element enumeration", &self.order, limit)),
        }
    }

    /// Calls `f` on every element; chain order, no sorting.
    pub fn for_each_element<F: FnMut(&Perm)>(&self, limit: u64, mut f: F) -> Result<()> {
        self.check_enumeration(limit)?;
        let k = self.levels.len();
        let mut stack: Vec<(usize, Perm)> = vec![(k, Perm::identity(self.degree))];
        while let Some((lvl, acc)) = stack.pop() {
            if lvl == 0 {
                f(&acc);
                continue;
            }
            let l = &self.levels[lvl - 1];
            for &x in l.orbit.iter().rev() {
                stack.push((lvl - 1, acc.mul(l.rep(x).unwrap())));
            }
        }
        Ok(())
    }

    /// All elements in lexicographic order of image tables.
    pub fn elements(&self, limit: u64) -> Result<Vec<Perm>> {
        let n = self.check_enumeration(limit)?;
        let mut out = Vec::with_capacity(n as usize);
        self.for_each_element(limit, |p| out.push(p.clone()))?;
        out.sort_unstable();
        Ok(out)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Orbit of `point` under `gens`, in breadth-first order.
pub fn orbit_under(gens: &[Perm], degree: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut out = vec![point];
    let mut q = VecDeque::from([point]);
    while let Some(x) = q.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
                q.push_back(y);
            }
        }
    }
    out
}

pub fn orbits_under(gens: &[Perm], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for s in 0..degree {
        if seen[s] {
            continue;
        }
        let mut o = orbit_under(gens, degree, s);
        for &x in &o {
            seen[x] = true;
        }
        o.sort_unstable();
        out.push(o);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Perm {
        Perm::parse(s, d).unwrap()
    }

    #[test]
    fn symmetric_five() {
        let g = PermGroup::new(5, vec![p("(1,2)", 5), p("(1,2,3,4,5)", 5)]).unwrap();
        assert_eq!(g.order(), &BigUint::from(120u32));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(4, vec![Perm::identity(4)]).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.contains(&Perm::identity(4)));
    }

    #[test]
    fn alternating_membership() {
        let a4 = PermGroup::new(4, vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        assert!(a4.contains(&p("(1,2,3)", 4)));
        assert!(!a4.contains(&p("(1,2)", 4)));
        assert_eq!(a4.orbit(0).unwrap().len(), 4);
        assert_eq!(a4.stabilizer(0).unwrap().order_u64(), Some(3));
    }

    #[test]
    fn intransitive_stabilizer() {
        let g = PermGroup::new(4, vec![p("(1,2)", 4)]).unwrap();
        assert_eq!(g.orbit(2).unwrap(), vec![2]);
        assert_eq!(g.stabilizer(2).unwrap().order_u64(), Some(2));
    }

    #[test]
    fn element_listing() {
        let c3 = PermGroup::new(3, vec![p("(1,2,3)", 3)]).unwrap();
        assert_eq!(c3.elements(100).unwrap().len(), 3);
        let s4 = PermGroup::new(4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap();
        let els = s4.elements(100).unwrap();
        assert_eq!(els.len(), 24);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(els.iter().filter(|e| e.order_u64() == 2).count(), 9);
        let s5 = PermGroup::new(5, vec![p("(1,2)", 5), p("(1,2,3,4,5)", 5)]).unwrap();
        assert!(matches!(s5.elements(10), Err(Error::GateExceeded { .. })));
    }

    #[test]
    fn generated_with_extra() {
        let a4 = PermGroup::new(4, vec![p("(1,2,3)", 4), p("(2,3,4)", 4)]).unwrap();
        let s4 = a4.generated_with(&[p("(1,2)", 4)]).unwrap();
        assert_eq!(s4.order_u64(), Some(24));
        let same = a4.generated_with(&[Perm::identity(4)]).unwrap();
        assert_eq!(same.order_u64(), Some(12));
    }

    #[test]
    fn large_symmetric_and_alternating() {
        let mut c: Vec<usize> = (0..12).collect();
        let cyc = Perm::from_cycles(12, &[c.clone()]).unwrap();
        let g = PermGroup::new(12, vec![p("(1,2)", 12), cyc]).unwrap();
        assert_eq!(g.order(), &factorial(12));
        c.pop();
        let c11 = Perm::from_cycles(12, &[c]).unwrap();
        let a = PermGroup::new(12, vec![p("(1,2,3)", 12), c11.mul(&p("(11,12)", 12))]).unwrap();
        assert!(a.contains(&p("(1,5,9)", 12)));
    }

    #[test]
    fn seeded_determinism() {
        let gens = vec![p("(1,2,3,4,5,6,7)", 7), p("(1,2)", 7)];
        let a = PermGroup::new(7, gens.clone()).unwrap();
        let b = PermGroup::new(7, gens).unwrap();
        assert_eq!(a.base(), b.base());
        assert_eq!(a.strong_generators(), b.strong_generators());
        assert_eq!(a.elements(10_000).unwrap(), b.elements(10_000).unwrap());
    }
}
