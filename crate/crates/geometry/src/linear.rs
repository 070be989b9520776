use std::collections::HashMap;

use arcmaps_core::{gate, Error, Limits, Perm, PermGroup, Result};
use num_bigint::BigUint;

use crate::SmallField;

pub type Vector = Vec<u8>;
/// Row-major; vectors are rows and act by `v ↦ vM`.
pub type Matrix = Vec<Vec<u8>>;

pub fn identity(d: usize) -> Matrix {
    (0..d).map(|i| (0..d).map(|j| u8::from(i == j)).collect()).collect()
}

pub fn vec_mat(k: &SmallField, v: &[u8], m: &Matrix) -> Vector {
    (0..m[0].len())
        .map(|j| v.iter().zip(m).fold(0, |acc, (&x, row)| k.add(acc, k.mul(x, row[j]))))
        .collect()
}

pub fn mat_mul(k: &SmallField, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().map(|row| vec_mat(k, row, b)).collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Gauss–Jordan inverse.
pub fn mat_inv(k: &SmallField, m: &Matrix) -> Result<Matrix> {
    let d = m.len();
    let mut a: Vec<Vec<u8>> = m.iter().zip(identity(d)).map(|(r, i)| [r.clone(), i].concat()).collect();
    for c in 0..d {
        let piv = (c..d).find(|&r| a[r][c] != 0).ok_or(Error::SingularMatrix)?;
        a.swap(c, piv);
        let s = k.inv(a[c][c]);
        for x in a[c].iter_mut() {
            *x = k.mul(*x, s);
        }
        for r in 0..d {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..2 * d {
                    let t = k.mul(f, a[c][j]);
                    a[r][j] = k.sub(a[r][j], t);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[d..].to_vec()).collect())
}

pub fn det(k: &SmallField, m: &Matrix) -> u8 {
    let d = m.len();
    let mut a = m.clone();
    let mut det = 1u8;
    for c in 0..d {
        let Some(piv) = (c..d).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(c, piv);
            det = k.neg(det);
        }
        det = k.mul(det, a[c][c]);
        let s = k.inv(a[c][c]);
        for r in c + 1..d {
            if a[r][c] != 0 {
                let f = k.mul(a[r][c], s);
                for j in c..d {
                    let t = k.mul(f, a[c][j]);
                    a[r][j] = k.sub(a[r][j], t);
                }
            }
        }
    }
    det
}

/// Scale so the last nonzero coordinate is 1.
pub fn normalize(k: &SmallField, v: &[u8]) -> Vector {
    match v.iter().rev().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&last) => {
            let s = k.inv(last);
            v.iter().map(|&x| k.mul(x, s)).collect()
        }
    }
}

/// All vectors of `F_q^d` in lexicographic order.
pub fn all_vectors(k: &SmallField, d: usize) -> Vec<Vector> {
    let q = k.q as usize;
    (0..q.pow(d as u32))
        .map(|mut i| {
            let mut v = vec![0u8; d];
            for x in v.iter_mut().rev() {
                *x = (i % q) as u8;
                i /= q;
            }
            v
        })
        .collect()
}

/// 1-spaces of `F_q^d`, normalized, in lexicographic order.
pub fn projective_points(k: &SmallField, d: usize) -> Vec<Vector> {
    all_vectors(k, d)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0) && normalize(k, v) == *v)
        .collect()
}

pub fn dot(k: &SmallField, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
}

/// A set of vectors acted on by matrices; projective domains renormalize.
#[derive(Clone, Debug)]
pub struct Domain {
    pub points: Vec<Vector>,
    pub projective: bool,
    index: HashMap<Vector, usize>,
}

impl Domain {
    pub fn new(points: Vec<Vector>, projective: bool) -> Domain {
        let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Domain { points, projective, index }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, v: &[u8]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// The permutation induced by `m`; errors if the domain is not invariant.
    pub fn perm(&self, k: &SmallField, m: &Matrix) -> Result<Perm> {
        if det(k, m) == 0 {
            return Err(Error::SingularMatrix);
        }
        let images = self
            .points
            .iter()
            .map(|v| {
                let w = vec_mat(k, v, m);
                let w = if self.projective { normalize(k, &w) } else { w };
                self.position(&w)
                    .map(|i| i as u32)
                    .ok_or_else(|| Error::BadParams("matrix does not preserve the domain".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Perm::from_images(images)
    }
}

/// Permutation group induced by matrices on a domain; when `expected` is
/// given the order must match it.
pub fn matrix_to_perm(
    k: &SmallField,
    mats: &[Matrix],
    domain: &Domain,
    expected: Option<&BigUint>,
    limits: &Limits,
) -> Result<PermGroup> {
    if domain.len() as u64 > limits.coset_index {
        return Err(gate("matrix action domain", domain.len(), limits.coset_index));
    }
    let gens = mats.iter().map(|m| domain.perm(k, m)).collect::<Result<Vec<_>>>()?;
    let g = PermGroup::new(domain.len(), gens)?;
    if let Some(e) = expected {
        if g.order() != e {
            return Err(Error::BadParams(format!("group order {} differs from expected {e}", g.order())));
        }
    }
    Ok(g)
}

/// Elementary transvection `I + a E_ij`.
pub fn transvection(d: usize, i: usize, j: usize, a: u8) -> Matrix {
    let mut m = identity(d);
    m[i][j] = a;
    m
}

/// Generators of `SL_d(q)`: transvections `I + E_ij` and `I + ω E_ij`.
pub fn sl_generators(k: &SmallField, d: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                out.push(transvection(d, i, j, 1));
                if k.q > 2 {
                    out.push(transvection(d, i, j, k.primitive));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_field;

    #[test]
    fn points_are_normalized_and_sorted() {
        let k = make_field(3).unwrap();
        let pts = projective_points(&k, 2);
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
        let pts3 = projective_points(&make_field(4).unwrap(), 3);
        assert_eq!(pts3.len(), 21);
        assert!(pts3.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn inverse_and_det() {
        let k = make_field(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]];
        let inv = mat_inv(&k, &m).unwrap();
        assert_eq!(mat_mul(&k, &m, &inv), identity(3));
        assert_eq!(det(&k, &m), 1);
        assert!(mat_inv(&k, &vec![vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn small_linear_groups() {
        let lim = Limits::default();
        let k2 = make_field(2).unwrap();
        let d = Domain::new(projective_points(&k2, 3), true);
        let g = matrix_to_perm(&k2, &sl_generators(&k2, 3), &d, Some(&BigUint::from(168u32)), &lim).unwrap();
        assert!(g.is_transitive());
        let k3 = make_field(3).unwrap();
        let d = Domain::new(projective_points(&k3, 2), true);
        let g = matrix_to_perm(&k3, &sl_generators(&k3, 2), &d, None, &lim).unwrap();
        assert_eq!(g.order_u64(), Some(12));
        assert!(matches!(d.perm(&k3, &vec![vec![1, 1], vec![1, 1]]), Err(Error::SingularMatrix)));
    }
}
