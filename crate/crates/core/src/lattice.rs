//! Conjugacy classes of subgroups of a small permutation group.
//!
//! Every subgroup is reached from the trivial group by repeatedly joining a
//! known class representative `H` with one element of prime-power order. The
//! joins `<H, x>` are tried once per orbit of `x` under left and right
//! multiplication by `H` and conjugation by `N(H)`; classes are deduplicated by
//! enumerating every conjugate once.

use std::collections::VecDeque;

use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use crate::error::{gate, Result};
use crate::group::{BuildOptions, PermGroup};
use crate::perm::Perm;
use crate::Limits;

const MAX_DEGREE: usize = 16;

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: PermGroup,
    pub order: u64,
    pub length: u64,
}

#[derive(Clone, Debug)]
pub struct SubgroupClassList {
    pub ambient: PermGroup,
    /// Sorted by order, then by discovery.
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupClassList {
    pub fn total_subgroups(&self) -> u64 {
        self.classes.iter().map(|c| c.length).sum()
    }
}

fn pack(p: &Perm) -> u64 {
    p.images()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
}

type Bits = Vec<u64>;

struct Table {
    els: Vec<Perm>,
    index: FxHashMap<u64, u32>,
    prime_power: Vec<bool>,
    words: usize,
}

impl Table {
    fn idx(&self, p: &Perm) -> u32 {
        self.index[&pack(p)]
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.idx(&self.els[a as usize].mul(&self.els[b as usize]))
    }

    fn conj(&self, a: u32, by: u32) -> u32 {
        self.idx(&self.els[a as usize].conjugate_by(&self.els[by as usize]))
    }

    fn empty(&self) -> Bits {
        vec![0; self.words]
    }
}

#[inline]
fn has(b: &Bits, i: u32) -> bool {
    b[(i / 64) as usize] >> (i % 64) & 1 == 1
}

#[inline]
fn set(b: &mut Bits, i: u32) {
    b[(i / 64) as usize] |= 1 << (i % 64);
}

#[derive(Clone)]
struct Sub {
    bits: Bits,
    members: Vec<u32>,
    gens: Vec<u32>,
}

/// Closure of `start` (already a subgroup) with extra generators.
fn join(t: &Table, start: &Sub, extra: &[u32]) -> Sub {
    let mut bits = start.bits.clone();
    let mut members = start.members.clone();
    let mut gens = start.gens.clone();
    gens.extend_from_slice(extra);
    let mut i = 0;
    let mut fresh = false;
    for &e in extra {
        if !has(&bits, e) {
            fresh = true;
        }
    }
    if !fresh {
        return Sub {
            bits,
            members,
            gens: start.gens.clone(),
        };
    }
    while i < members.len() {
        let m = members[i];
        for &g in &gens {
            let p = t.mul(m, g);
            if !has(&bits, p) {
                set(&mut bits, p);
                members.push(p);
            }
        }
        i += 1;
    }
    Sub { bits, members, gens }
}

fn conjugate(t: &Table, s: &Sub, by: u32) -> Sub {
    let mut bits = t.empty();
    let members: Vec<u32> = s.members.iter().map(|&m| t.conj(m, by)).collect();
    for &m in &members {
        set(&mut bits, m);
    }
    Sub {
        bits,
        members,
        gens: s.gens.iter().map(|&g| t.conj(g, by)).collect(),
    }
}

pub fn subgroup_classes(x: &PermGroup, limits: &Limits) -> Result<SubgroupClassList> {
    let n = match x.order().to_u64() {
        Some(n) if n <= limits.lattice => n as usize,
        _ => return Err(gate("subgroup lattice", x.order(), limits.lattice)),
    };
    if x.degree() > MAX_DEGREE {
        return Err(gate("subgroup lattice degree", x.degree(), MAX_DEGREE));
    }
    let els = x.elements(limits.lattice)?;
    let index: FxHashMap<u64, u32> = els.iter().enumerate().map(|(i, e)| (pack(e), i as u32)).collect();
    let prime_power = els
        .iter()
        .map(|e| {
            let o = e.order_u64();
            o > 1 && is_prime_power(o)
        })
        .collect();
    let t = Table {
        els,
        index,
        prime_power,
        words: n.div_ceil(64),
    };
    let xgens: Vec<u32> = x.generators().iter().map(|g| t.idx(g)).collect();
    let id = t.idx(&Perm::identity(x.degree()));

    let mut seen: FxHashMap<Bits, u32> = FxHashMap::default();
    let mut reps: Vec<Sub> = Vec::new();
    let mut lengths: Vec<u64> = Vec::new();

    let register = |s: Sub, seen: &mut FxHashMap<Bits, u32>, reps: &mut Vec<Sub>, lengths: &mut Vec<u64>| {
        let cid = reps.len() as u32;
        let mut q = VecDeque::new();
        seen.insert(s.bits.clone(), cid);
        q.push_back(s.clone());
        let mut len = 1;
        while let Some(c) = q.pop_front() {
            for &g in &xgens {
                let d = conjugate(&t, &c, g);
                if !seen.contains_key(&d.bits) {
                    seen.insert(d.bits.clone(), cid);
                    len += 1;
                    q.push_back(d);
                }
            }
        }
        reps.push(s);
        lengths.push(len);
    };

    let mut trivial_bits = t.empty();
    set(&mut trivial_bits, id);
    register(
        Sub {
            bits: trivial_bits,
            members: vec![id],
            gens: vec![],
        },
        &mut seen,
        &mut reps,
        &mut lengths,
    );

    let mut next = 0;
    while next < reps.len() {
        let h = reps[next].clone();
        next += 1;
        if h.members.len() == n {
            continue;
        }
        // Normalizer generators, greedily.
        let mut norm = h.clone();
        for e in 0..n as u32 {
            if has(&norm.bits, e) {
                continue;
            }
            if h.gens.iter().all(|&g| has(&h.bits, t.conj(g, e))) {
                norm = join(&t, &norm, &[e]);
            }
        }
        let mut acting: Vec<(u8, u32)> = Vec::new();
        for &g in &h.gens {
            acting.push((0, g));
            acting.push((1, g));
        }
        for &g in &norm.gens {
            acting.push((2, g));
        }
        let mut done = h.bits.clone();
        for e in 0..n as u32 {
            if has(&done, e) {
                continue;
            }
            let mut orbit = vec![e];
            set(&mut done, e);
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &(kind, g) in &acting {
                    let z = match kind {
                        0 => t.mul(g, y),
                        1 => t.mul(y, g),
                        _ => t.conj(y, g),
                    };
                    if !has(&done, z) {
                        set(&mut done, z);
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            let Some(&rep) = orbit.iter().find(|&&y| t.prime_power[y as usize]) else {
                continue;
            };
            let k = join(&t, &h, &[rep]);
            if !seen.contains_key(&k.bits) {
                register(k, &mut seen, &mut reps, &mut lengths);
            }
        }
    }

    let mut classes: Vec<SubgroupClass> = reps
        .iter()
        .zip(&lengths)
        .map(|(s, &len)| {
            let gens = s.gens.iter().map(|&g| t.els[g as usize].clone()).collect();
            let rep = PermGroup::build(
                x.degree(),
                gens,
                &BuildOptions {
                    seed: x.seed(),
                    known_order: Some(s.members.len().into()),
                    ..Default::default()
                },
            )
            .expect("subgroup of a valid group");
            debug_assert_eq!(rep.order_u64(), Some(s.members.len() as u64));
            SubgroupClass {
                rep,
                order: s.members.len() as u64,
                length: len,
            }
        })
        .collect();
    classes.sort_by_key(|c| c.order);
    Ok(SubgroupClassList {
        ambient: x.clone(),
        classes,
    })
}

pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// Conjugacy of two subgroups of `x`: cheap invariants first, then a search
/// for a conjugating element over the elements of `x`.
pub fn are_conjugate(x: &PermGroup, h: &PermGroup, k: &PermGroup, limits: &Limits) -> Result<bool> {
    if h.order() != k.order() {
        return Ok(false);
    }
    let mut oh: Vec<usize> = h.orbits().iter().map(|o| o.len()).collect();
    let mut ok: Vec<usize> = k.orbits().iter().map(|o| o.len()).collect();
    oh.sort_unstable();
    ok.sort_unstable();
    if oh != ok {
        return Ok(false);
    }
    let hist = |g: &PermGroup| -> Result<Vec<u64>> {
        let mut v: Vec<u64> = g.elements(limits.enumeration)?.iter().map(|e| e.order_u64()).collect();
        v.sort_unstable();
        Ok(v)
    };
    if hist(h)? != hist(k)? {
        return Ok(false);
    }
    let mut found = false;
    let mut budget = limits.backtrack;
    x.for_each_element(limits.enumeration, |c| {
        if found || budget == 0 {
            return;
        }
        budget -= 1;
        if h.generators().iter().all(|g| k.contains(&g.conjugate_by(c))) {
            found = true;
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        PermGroup::new(n, vec![Perm::parse("(1,2)", n).unwrap(), c]).unwrap()
    }

    #[test]
    fn s4_has_eleven_classes() {
        let l = subgroup_classes(&sym(4), &Limits::default()).unwrap();
        assert_eq!(l.classes.len(), 11);
        assert_eq!(l.total_subgroups(), 30);
        for c in &l.classes {
            assert_eq!(24 % c.order, 0);
        }
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(8));
        assert!(is_prime_power(7));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
    }
}
