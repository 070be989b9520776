use std::collections::VecDeque;

use arcmaps_core::{gate, CosetSpace, Error, Limits, Result};
use rustc_hash::FxHashSet;

use crate::Graph;

/// The orbital `{(α, β)}^X` as a sorted arc list, `α` being coset 0.
pub fn orbital_arcs(space: &CosetSpace, beta: usize, limits: &Limits) -> Result<Vec<(usize, usize)>> {
    let n = space.size();
    if n as u64 > limits.graph_vertices {
        return Err(gate("orbital graph", n, limits.graph_vertices));
    }
    if beta == 0 || beta >= n {
        return Err(Error::BadParams(format!("β must be a coset other than α, got {}", beta + 1)));
    }
    let key = |u: usize, v: usize| ((u as u64) << 32) | v as u64;
    let mut seen = FxHashSet::default();
    seen.insert(key(0, beta));
    let mut q = VecDeque::from([(0usize, beta)]);
    while let Some((u, v)) = q.pop_front() {
        for s in &space.induced {
            let (a, b) = (s.apply(u), s.apply(v));
            if seen.insert(key(a, b)) {
                q.push_back((a, b));
            }
        }
    }
    let mut arcs: Vec<(usize, usize)> = seen.into_iter().map(|k| ((k >> 32) as usize, (k & 0xffff_ffff) as usize)).collect();
    arcs.sort_unstable();
    Ok(arcs)
}

/// Orbital graph of a self-paired suborbit.
pub fn orbital_graph(space: &CosetSpace, beta: usize, limits: &Limits) -> Result<Graph> {
    let arcs = orbital_arcs(space, beta, limits)?;
    let back = space.locate(&space.rep(beta).inverse());
    if arcs.binary_search(&(0, back)).is_err() {
        return Err(Error::NotSelfPaired);
    }
    Graph::from_edges(space.size(), arcs.into_iter().filter(|(u, v)| u < v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use arcmaps_core::{Perm, PermGroup};

    #[test]
    fn cyclic_orbital_is_directed() {
        let c7 = PermGroup::new(7, vec![Perm::parse("(1,2,3,4,5,6,7)", 7).unwrap()]).unwrap();
        let t = PermGroup::trivial(7);
        let space = CosetSpace::new(&c7, &t, &Limits::default()).unwrap();
        let beta = space.locate(&Perm::parse("(1,2,3,4,5,6,7)", 7).unwrap());
        assert!(matches!(orbital_graph(&space, beta, &Limits::default()), Err(Error::NotSelfPaired)));
        assert_eq!(orbital_arcs(&space, beta, &Limits::default()).unwrap().len(), 7);
    }
}
