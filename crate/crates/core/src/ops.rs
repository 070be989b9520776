use num_traits::ToPrimitive;

use crate::error::{gate, Error, Result};
use crate::group::{BuildOptions, PermGroup};
use crate::perm::Perm;
use crate::Limits;

/// Grows a subgroup of `ambient_degree` from elements passing a filter.
struct Accumulator {
    group: PermGroup,
}

impl Accumulator {
    fn new(start: PermGroup) -> Accumulator {
        Accumulator { group: start }
    }

    fn offer(&mut self, p: &Perm) {
        if !self.group.contains(p) {
            self.group = self.group.generated_with(std::slice::from_ref(p)).expect("same degree");
        }
    }
}

/// `A ∩ B` by enumerating the smaller group and testing membership in the other.
pub fn intersection(a: &PermGroup, b: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.is_subgroup_of(large) {
        return Ok(small.clone());
    }
    let n = small.order().to_u64().unwrap_or(u64::MAX);
    if n > limits.enumeration {
        return Err(gate("intersection", small.order(), limits.enumeration));
    }
    let mut acc = Accumulator::new(PermGroup::trivial(a.degree()));
    small.for_each_element(limits.enumeration, |p| {
        if large.contains(p) {
            acc.offer(p);
        }
    })?;
    Ok(acc.group)
}

/// `{g in G : S^g = S}`, by backtracking over a base that starts with `S`.
pub fn setwise_stabilizer(g: &PermGroup, set: &[usize], limits: &Limits) -> Result<PermGroup> {
    let mut s: Vec<usize> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() {
        return Err(Error::BadParams("empty point set".into()));
    }
    if let Some(&x) = s.iter().find(|&&x| x >= g.degree()) {
        return Err(Error::PointOutOfRange {
            point: x + 1,
            degree: g.degree(),
        });
    }
    if g.order().to_u64().map_or(true, |n| n > limits.backtrack) {
        return Err(gate("setwise stabilizer", g.order(), limits.backtrack));
    }
    let mut in_set = vec![false; g.degree()];
    for &x in &s {
        in_set[x] = true;
    }
    let h = g.with_base_prefix(&s);
    let k = s.len();
    let mut acc = Accumulator::new(h.chain_suffix(k));
    let levels = h.levels();
    // w_i = u_i ... u_0 maps b_i to its image.
    let mut stack: Vec<(usize, Perm)> = vec![(0, Perm::identity(g.degree()))];
    while let Some((i, w)) = stack.pop() {
        if i == k {
            acc.offer(&w);
            continue;
        }
        let l = &levels[i];
        for &x in l.orbit.iter().rev() {
            if in_set[w.apply(x)] {
                stack.push((i + 1, l.rep(x).unwrap().mul(&w)));
            }
        }
    }
    Ok(acc.group)
}

/// Normal core of `a` in `x`: the largest subgroup of `a` normalized by `x`.
pub fn normal_core(x: &PermGroup, a: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let mut c = a.clone();
    loop {
        let mut changed = false;
        for s in x.generators() {
            if c.is_normalized_by(s) {
                continue;
            }
            let conj = c.conjugate(s);
            c = intersection(&c, &conj, limits)?;
            changed = true;
        }
        if !changed {
            return Ok(c);
        }
    }
}

/// Derived subgroup as the normal closure of generator commutators.
pub fn derived_subgroup(x: &PermGroup) -> PermGroup {
    let gens = x.generators();
    let mut comms = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = gens[i].inverse().mul(&gens[j].inverse()).mul(&gens[i]).mul(&gens[j]);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(x, &comms)
}

/// Smallest normal subgroup of `x` containing `elems`.
pub fn normal_closure(x: &PermGroup, elems: &[Perm]) -> PermGroup {
    let opts = BuildOptions {
        seed: x.seed(),
        ..Default::default()
    };
    let mut n = PermGroup::build(x.degree(), elems.to_vec(), &opts).expect("same degree");
    loop {
        let mut grew = false;
        'outer: for g in n.generators().to_vec() {
            for s in x.generators() {
                let c = g.conjugate_by(s);
                if !n.contains(&c) {
                    n = n.generated_with(&[c]).expect("same degree");
                    grew = true;
                    break 'outer;
                }
            }
        }
        if !grew {
            return n;
        }
    }
}
