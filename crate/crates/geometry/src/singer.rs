//! `PG_2(q)`, `q = 2^e`, as the cyclic model over `F_{q^3}`: point `j` is
//! `<ω^j>` for a primitive `ω`, and line `k` is `{ j : Tr(ω^(j+k)) = 0 }`.
//! In this model the Singer cycle, the Frobenius map and the standard
//! polarity are simple index maps.

use std::collections::HashMap;

use arcmaps_core::{Error, Perm, PermGroup, Result};
use arcmaps_graph::Graph;
use num_bigint::BigUint;

/// `GF(2^m)` by exp/log tables over the least primitive polynomial.
struct BinaryField {
    m: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl BinaryField {
    fn new(m: u32) -> BinaryField {
        let size = 1u32 << m;
        for low in 1..size {
            let poly = size | low;
            let mut exp = Vec::with_capacity(size as usize);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..size - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x <<= 1;
                if x & size != 0 {
                    x ^= poly;
                }
            }
            if ok && x == 1 {
                let mut log = vec![0; size as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return BinaryField { m, exp, log };
            }
        }
        unreachable!("primitive polynomials exist")
    }

    fn order(&self) -> u32 {
        (1 << self.m) - 1
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[((self.log[a as usize] + self.log[b as usize]) % self.order()) as usize]
    }

    fn pow2k(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 * (1u64 << k)) % self.order() as u64;
        self.exp[e as usize]
    }
}

#[derive(Clone, Debug)]
pub struct SingerPlane {
    pub q: u64,
    /// Number of points, `q^2 + q + 1`.
    pub n: usize,
    /// `{ j : Tr(ω^j) = 0 }`, a perfect difference set.
    pub difference_set: Vec<usize>,
    /// Points `0..n`, lines `n..2n`.
    pub incidence: Graph,
    pub singer: Perm,
    /// `z ↦ z^2`.
    pub frobenius: Perm,
    pub polarity: Perm,
    /// A transvection `z ↦ z + Tr(z) c` with `Tr(c) = 0`.
    pub transvection: Perm,
}

pub fn singer_plane(q: u64) -> Result<SingerPlane> {
    let e = match crate::prime_power(q) {
        Some((2, e)) if 3 * e <= 15 => e,
        _ => return Err(Error::BadParams(format!("cyclic plane model needs q = 2^e <= 32, got {q}"))),
    };
    let f = BinaryField::new(3 * e);
    let n = (q * q + q + 1) as usize;
    let trace = |z: u32| z ^ f.pow2k(z, e) ^ f.pow2k(z, 2 * e);
    let point_of = |z: u32| (f.log[z as usize] as usize) % n;
    let difference_set: Vec<usize> = (0..n).filter(|&j| trace(f.exp[j]) == 0).collect();
    let in_d: Vec<bool> = (0..n).map(|j| difference_set.contains(&j)).collect();
    let line = |k: usize| -> Vec<usize> { (0..n).filter(|&j| in_d[(j + k) % n]).collect() };
    let lines: HashMap<Vec<usize>, usize> = (0..n).map(|k| (line(k), k)).collect();
    let incidence = Graph::from_edges(
        2 * n,
        (0..n).flat_map(|k| line(k).into_iter().map(move |j| (j, n + k))),
    )?;
    // Extends a collineation given on points to lines.
    let extend = |pts: Vec<usize>| -> Result<Perm> {
        let mut images: Vec<u32> = pts.iter().map(|&x| x as u32).collect();
        for k in 0..n {
            let mut img: Vec<usize> = line(k).iter().map(|&j| pts[j]).collect();
            img.sort_unstable();
            let k2 = lines.get(&img).ok_or_else(|| Error::BadParams("not a collineation".into()))?;
            images.push((n + k2) as u32);
        }
        Perm::from_images(images)
    };
    let singer = extend((0..n).map(|j| (j + 1) % n).collect())?;
    let frobenius = extend((0..n).map(|j| (2 * j) % n).collect())?;
    let polarity = Perm::from_images((0..2 * n as u32).map(|v| (v + n as u32) % (2 * n as u32)).collect())?;
    let c = (1..=f.order()).find(|&z| trace(z) == 0).expect("trace has a kernel");
    let transvection = extend(
        (0..n)
            .map(|j| {
                let z = f.exp[j];
                point_of(z ^ f.mul(trace(z), c))
            })
            .collect(),
    )?;
    Ok(SingerPlane {
        q,
        n,
        difference_set,
        incidence,
        singer,
        frobenius,
        polarity,
        transvection,
    })
}

impl SingerPlane {
    /// `PΓL_3(q)` extended by the polarity, on points and lines.
    pub fn full_group(&self) -> Result<PermGroup> {
        let g = PermGroup::new(
            2 * self.n,
            vec![self.singer.clone(), self.frobenius.clone(), self.polarity.clone(), self.transvection.clone()],
        )?;
        let q = BigUint::from(self.q);
        let e = crate::prime_power(self.q).expect("checked").1;
        let expected = q.pow(3) * (q.pow(3) - 1u32) * (q.pow(2) - 1u32) * (2 * e);
        if g.order() != &expected {
            return Err(Error::BadParams(format!("collineation group order {} != {expected}", g.order())));
        }
        Ok(g)
    }

    /// Normalizer of the Singer cycle: `n : 6e`.
    pub fn singer_normalizer(&self) -> Result<PermGroup> {
        PermGroup::new(2 * self.n, vec![self.singer.clone(), self.frobenius.clone(), self.polarity.clone()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_model() {
        let p = singer_plane(2).unwrap();
        assert_eq!(p.difference_set.len(), 3);
        assert_eq!(p.full_group().unwrap().order_u64(), Some(336));
        assert_eq!(p.singer_normalizer().unwrap().order_u64(), Some(42));
        for x in [&p.singer, &p.frobenius, &p.polarity, &p.transvection] {
            assert!(p.incidence.is_automorphism(x));
        }
        assert!(singer_plane(3).is_err());
    }
}
