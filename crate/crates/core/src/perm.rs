use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};

/// A permutation of `{0..d-1}` acting on the right: `x^(pq) = (x^p)^q`.
///
/// All text I/O is 1-based; the image table is 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from a 0-based image table, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            let x = x as usize;
            if x >= d {
                return Err(Error::PointOutOfRange {
                    point: x + 1,
                    degree: d,
                });
            }
            if seen[x] {
                return Err(Error::RepeatedPoint(x + 1));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for c in cycles {
            for &x in c {
                if x >= degree {
                    return Err(Error::PointOutOfRange {
                        point: x + 1,
                        degree,
                    });
                }
                if used[x] {
                    return Err(Error::RepeatedPoint(x + 1));
                }
                used[x] = true;
            }
            for i in 0..c.len() {
                images[c[i]] = c[(i + 1) % c.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    /// Parses `(a,b,c)(d,e)` with 1-based points; whitespace is ignored.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::MalformedCycle(text.to_string()));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::MalformedCycle(text.to_string()))?;
            let body = &rest[1..close];
            if body.is_empty() {
                return Err(Error::MalformedCycle(text.to_string()));
            }
            let mut cyc = Vec::new();
            for tok in body.split(',') {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::MalformedCycle(text.to_string()))?;
                if v == 0 || v > degree {
                    return Err(Error::PointOutOfRange { point: v, degree });
                }
                cyc.push(v - 1);
            }
            cycles.push(cyc);
            rest = &rest[close + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked right-action product: apply `self`, then `other`.
    #[inline]
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `other^-1 self other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for i in 0..self.degree() {
            images[other.images[i] as usize] = other.images[self.images[i] as usize];
        }
        Perm { images }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its minimum, sorted by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// All cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            out.push(len);
        }
        out
    }

    pub fn sign(&self) -> i8 {
        let even = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> BigUint {
        self.cycle_type()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Order as a machine integer; saturates at `u64::MAX`.
    pub fn order_u64(&self) -> u64 {
        let mut acc: u64 = 1;
        for l in self.cycle_type() {
            let l = l as u64;
            let g = acc.gcd(&l);
            acc = match (acc / g).checked_mul(l) {
                Some(v) => v,
                None => return u64::MAX,
            };
        }
        acc
    }

    pub fn sign_and_order(&self) -> (i8, BigUint) {
        (self.sign(), self.order())
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    pub fn fixed_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 == x)
            .count()
    }

    /// Image of a point set, sorted.
    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&x| self.apply(x)).collect();
        v.sort_unstable();
        v
    }

    /// Induced action on 2-subsets ordered lexicographically by `(min, max)`.
    pub fn lift_to_pairs(&self) -> Perm {
        self.lift_to_subsets(2)
    }

    /// Induced action on k-subsets, ordered lexicographically.
    pub fn lift_to_subsets(&self, k: usize) -> Perm {
        let subsets = k_subsets(self.degree(), k);
        let rank: std::collections::HashMap<&[usize], u32> = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i as u32))
            .collect();
        let images = subsets
            .iter()
            .map(|s| rank[self.image_of_set(s).as_slice()])
            .collect();
        Perm { images }
    }

    /// Restriction to an invariant subset, relabelled by position in `domain`.
    pub fn restrict(&self, domain: &[usize]) -> Perm {
        let mut pos = vec![u32::MAX; self.degree()];
        for (i, &x) in domain.iter().enumerate() {
            pos[x] = i as u32;
        }
        Perm {
            images: domain.iter().map(|&x| pos[self.apply(x)]).collect(),
        }
    }
}

/// All k-subsets of `{0..n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "()")
        } else {
            write!(f, "{}", self)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_three_cycle() {
        let p = Perm::parse("(1,2,3)", 5).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 3, 4]);
    }

    #[test]
    fn parse_empty_is_identity() {
        assert!(Perm::parse("", 4).unwrap().is_identity());
        assert!(Perm::parse("  ", 4).unwrap().is_identity());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Perm::parse("(1,2", 4), Err(Error::MalformedCycle(_))));
        assert!(matches!(Perm::parse("(1,x)", 4), Err(Error::MalformedCycle(_))));
        assert!(matches!(
            Perm::parse("(1,5)", 4),
            Err(Error::PointOutOfRange { point: 5, .. })
        ));
        assert!(matches!(Perm::parse("(1,2)(2,3)", 4), Err(Error::RepeatedPoint(2))));
    }

    #[test]
    fn right_action_composition() {
        let a = Perm::parse("(1,2)", 3).unwrap();
        let b = Perm::parse("(2,3)", 3).unwrap();
        assert_eq!(a.compose(&b).unwrap(), Perm::parse("(1,3,2)", 3).unwrap());
        assert!(matches!(
            a.compose(&Perm::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn sign_and_order_examples() {
        let p = Perm::parse("(1,2)(3,4,5)", 5).unwrap();
        assert_eq!(p.sign_and_order(), (-1, BigUint::from(6u32)));
        assert_eq!(Perm::identity(3).sign_and_order(), (1, BigUint::from(1u32)));
        let q = Perm::parse("(1,2)(3,6)", 7).unwrap();
        assert_eq!(q.order_u64(), 2);
    }

    #[test]
    fn pairs_of_transposition() {
        // pairs of 4 points: {1,2},{1,3},{1,4},{2,3},{2,4},{3,4}
        let p = Perm::parse("(1,2)", 4).unwrap().lift_to_pairs();
        assert_eq!(p.images(), &[0, 3, 4, 1, 2, 5]);
        assert!(Perm::identity(5).lift_to_pairs().is_identity());
        assert_eq!(Perm::identity(5).lift_to_pairs().degree(), 10);
    }

    #[test]
    fn render_sorted_by_min() {
        let p = Perm::parse("(5,4)(3,1,2)", 5).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
    }

    #[test]
    fn subsets_count() {
        assert_eq!(k_subsets(6, 3).len(), 20);
        assert_eq!(k_subsets(4, 0).len(), 1);
        assert_eq!(k_subsets(3, 4).len(), 0);
    }

    #[test]
    fn conjugate_matches_product() {
        let a = Perm::parse("(1,2,3)(4,5)", 6).unwrap();
        let b = Perm::parse("(1,6,2)", 6).unwrap();
        assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
    }
}
