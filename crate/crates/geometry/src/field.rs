use std::fmt::Write;

use arcmaps_core::{Error, Result};

/// `F_q` for `q = p^f <= 81`, elements `0..q` encoding polynomials in `x`
/// with base-`p` digits (digit `i` is the coefficient of `x^i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallField {
    pub p: u32,
    pub f: u32,
    pub q: u32,
    /// Coefficients of the defining polynomial, lowest first, monic of degree `f`.
    pub modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// Least element of multiplicative order `q - 1`.
    pub primitive: u8,
}

pub const MAX_FIELD: u32 = 81;

/// `(p, f)` with `q = p^f`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut f) = (q, 0);
    while m % p == 0 {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p as u32, f))
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for x in d.iter_mut() {
        *x = v % p;
        v /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo monic `m` over `F_p`; coefficient lists, lowest first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for i in 0..dm {
                r[shift + i] = (r[shift + i] + p - (lead * m[i]) % p) % p;
            }
        }
    }
    r
}

/// Irreducible iff no monic factor of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    for k in 1..=d / 2 {
        for low in 0..p.pow(k as u32) {
            let mut g = digits(low, p, k);
            g.push(1);
            if poly_rem(m, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

pub fn make_field(q: u64) -> Result<SmallField> {
    let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > MAX_FIELD as u64 {
        return Err(Error::BadParams(format!("field size {q} above {MAX_FIELD}")));
    }
    let q = q as u32;
    let fl = f as usize;
    // Least monic irreducible: lower coefficients read as a base-p number.
    let modulus = (0..q)
        .map(|low| {
            let mut m = digits(low, p, fl);
            m.push(1);
            m
        })
        .find(|m| f == 1 || is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree");
    let n = q as usize;
    let mut add = vec![0u8; n * n];
    let mut mul = vec![0u8; n * n];
    for a in 0..q {
        let da = digits(a, p, fl);
        for b in 0..q {
            let db = digits(b, p, fl);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = undigits(&s, p) as u8;
            let mut prod = vec![0u32; 2 * fl];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let r = poly_rem(&prod, &modulus, p);
            let mut r = r;
            r.resize(fl, 0);
            mul[(a * q + b) as usize] = undigits(&r, p) as u8;
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8)
        .collect();
    let inv = (0..q)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u8
            }
        })
        .collect();
    let mut field = SmallField {
        p,
        f,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
        primitive: 0,
    };
    field.primitive = (1..q as u8)
        .find(|&a| field.mult_order(a) == q - 1)
        .expect("multiplicative group is cyclic");
    Ok(field)
}

impl SmallField {
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// `inv(0)` is 0.
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, e: u32) -> u8 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn mult_order(&self, a: u8) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    /// `a^p`, the generator of the Galois group.
    pub fn frobenius(&self, a: u8) -> u8 {
        self.pow(a, self.p)
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// Addition and multiplication tables as text.
    pub fn dump(&self) -> String {
        let mut s = format!("F_{} modulus {:?} primitive {}\n", self.q, self.modulus, self.primitive);
        for (name, t) in [("+", &self.add), ("*", &self.mul)] {
            writeln!(s, "{name}").unwrap();
            for row in t.chunks(self.q as usize) {
                let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(s, "{}", r.join(" ")).unwrap();
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chosen_polynomials() {
        assert_eq!(make_field(8).unwrap().modulus, vec![1, 1, 0, 1]);
        let f8 = make_field(8).unwrap();
        assert_eq!(f8.mult_order(2), 7);
        assert_eq!(make_field(9).unwrap().modulus, vec![1, 0, 1]);
        assert_eq!(make_field(9).unwrap().mult_order(3), 4);
        assert!(matches!(make_field(12), Err(Error::NotPrimePower(12))));
        assert!(make_field(128).is_err());
    }

    #[test]
    fn axioms_for_every_field() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81] {
            let k = make_field(q).unwrap();
            let els: Vec<u8> = k.elements().collect();
            assert_eq!(k.mult_order(k.primitive), q as u32 - 1);
            for &a in &els {
                assert_eq!(k.add(a, 0), a);
                assert_eq!(k.mul(a, 1), a);
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a)), 1);
                }
                for &b in &els {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for &c in els.iter().step_by(if q > 16 { 7 } else { 1 }) {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                        assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
                    }
                }
            }
        }
    }
}
