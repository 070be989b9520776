use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashSet;

use crate::error::{gate, Result};
use crate::group::{factorial, PermGroup};
use crate::perm::Perm;
use crate::Limits;

/// Cyclic-or-dihedral verdict. The trivial group and `C_2` are cyclic; the
/// Klein four group is `Dihedral(4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureTag {
    Cyclic(u64),
    Dihedral(u64),
    Other(BigUint),
}

impl StructureTag {
    pub fn is_cyclic_or_dihedral(&self) -> bool {
        !matches!(self, StructureTag::Other(_))
    }

    pub fn order(&self) -> BigUint {
        match self {
            StructureTag::Cyclic(k) | StructureTag::Dihedral(k) => BigUint::from(*k),
            StructureTag::Other(n) => n.clone(),
        }
    }

    pub fn parse(s: &str) -> Option<StructureTag> {
        let s = s.trim();
        let (name, rest) = s.split_once('(')?;
        let num = rest.strip_suffix(')')?;
        match name {
            "Cyclic" => num.parse().ok().map(StructureTag::Cyclic),
            "Dihedral" => num.parse().ok().map(StructureTag::Dihedral),
            "Other" => num.parse().ok().map(StructureTag::Other),
            _ => None,
        }
    }
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::Cyclic(k) => write!(f, "Cyclic({k})"),
            StructureTag::Dihedral(k) => write!(f, "Dihedral({k})"),
            StructureTag::Other(n) => write!(f, "Other({n})"),
        }
    }
}

/// Decides cyclic / dihedral by element enumeration.
pub fn classify_cyclic_dihedral(h: &PermGroup, limits: &Limits) -> Result<StructureTag> {
    let n = match h.order().to_u64() {
        Some(n) if n <= limits.enumeration => n,
        _ => return Err(gate("structure identification", h.order(), limits.enumeration)),
    };
    if n <= 2 {
        return Ok(StructureTag::Cyclic(n));
    }
    let els = h.elements(limits.enumeration)?;
    let orders: Vec<u64> = els.iter().map(|e| e.order_u64()).collect();
    if orders.iter().any(|&o| o == n) {
        return Ok(StructureTag::Cyclic(n));
    }
    if n % 2 == 1 {
        return Ok(StructureTag::Other(h.order().clone()));
    }
    let m = n / 2;
    let invols: Vec<&Perm> = els
        .iter()
        .zip(&orders)
        .filter(|(_, &o)| o == 2)
        .map(|(e, _)| e)
        .collect();
    for (c, &o) in els.iter().zip(&orders) {
        if o != m {
            continue;
        }
        let cinv = c.inverse();
        let mut store = Vec::with_capacity(m as usize);
        let mut x = Perm::identity(h.degree());
        for _ in 0..m {
            store.push(x.clone());
            x = x.mul(c);
        }
        let powers: FxHashSet<&[u32]> = store.iter().map(|p| p.images()).collect();
        for t in &invols {
            if !powers.contains(t.images()) && c.conjugate_by(t) == cinv {
                return Ok(StructureTag::Dihedral(n));
            }
        }
    }
    Ok(StructureTag::Other(h.order().clone()))
}

/// Elements of order 2, in lexicographic order.
pub fn involutions(h: &PermGroup, limits: &Limits) -> Result<Vec<Perm>> {
    Ok(h.elements(limits.enumeration)?
        .into_iter()
        .filter(|e| e.order_u64() == 2)
        .collect())
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Transitivity on unordered k-subsets.
pub fn k_homogeneous(g: &PermGroup, k: usize, limits: &Limits) -> Result<bool> {
    let n = g.degree();
    let total = binomial(n, k);
    match total.to_u64() {
        Some(t) if t <= limits.coset_index => {
            Ok(tuple_orbit_size(g, k, true) as u64 == t)
        }
        _ => Err(gate("k-homogeneity", total, limits.coset_index)),
    }
}

/// Transitivity on ordered k-tuples of distinct points.
pub fn k_transitive(g: &PermGroup, k: usize, limits: &Limits) -> Result<bool> {
    let n = g.degree();
    if k > n {
        return Ok(false);
    }
    let total = factorial(n) / factorial(n - k);
    match total.to_u64() {
        Some(t) if t <= limits.coset_index => {
            Ok(tuple_orbit_size(g, k, false) as u64 == t)
        }
        _ => Err(gate("k-transitivity", total, limits.coset_index)),
    }
}

fn tuple_orbit_size(g: &PermGroup, k: usize, unordered: bool) -> usize {
    let start: Vec<u32> = (0..k as u32).collect();
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    seen.insert(start.clone());
    let mut q = VecDeque::from([start]);
    while let Some(t) = q.pop_front() {
        for s in g.generators() {
            let mut u: Vec<u32> = t.iter().map(|&x| s.apply(x as usize) as u32).collect();
            if unordered {
                u.sort_unstable();
            }
            if seen.insert(u.clone()) {
                q.push_back(u);
            }
        }
    }
    seen.len()
}
