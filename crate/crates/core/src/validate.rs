//! Independent re-check of embedding certificates.
//!
//! Deliberately self-contained: raw image vectors, its own stabilizer chain,
//! its own intersection and cyclic/dihedral test. Nothing here calls the
//! group engine used to produce the certificates.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::factor::EmbeddingCertificate;
use crate::perm::Perm;

type P = Vec<u32>;

fn mul(a: &P, b: &P) -> P {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inv(a: &P) -> P {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x as usize] = i as u32;
    }
    r
}

fn ident(n: usize) -> P {
    (0..n as u32).collect()
}

fn is_id(a: &P) -> bool {
    a.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

fn elem_order(a: &P) -> u64 {
    let mut k = 1;
    let mut x = a.clone();
    while !is_id(&x) {
        x = mul(&x, a);
        k += 1;
    }
    k
}

/// Plain Schreier–Sims: rescan every Schreier generator until none sifts.
struct Chain {
    n: usize,
    base: Vec<usize>,
    gens: Vec<Vec<P>>,
    trans: Vec<HashMap<usize, P>>,
}

impl Chain {
    fn new(n: usize, gens: &[P]) -> Chain {
        let mut c = Chain {
            n,
            base: Vec::new(),
            gens: Vec::new(),
            trans: Vec::new(),
        };
        for g in gens {
            let (h, j) = c.sift(g, 0);
            if !is_id(&h) {
                c.add(h, j);
            }
        }
        loop {
            let mut pending = None;
            'scan: for i in 0..c.base.len() {
                let pts: Vec<usize> = c.trans[i].keys().copied().collect();
                for p in pts {
                    for s in &c.gens[i] {
                        let q = s[p] as usize;
                        let sch = mul(&mul(&c.trans[i][&p], s), &inv(&c.trans[i][&q]));
                        let (h, j) = c.sift(&sch, i + 1);
                        if !is_id(&h) {
                            pending = Some((h, j));
                            break 'scan;
                        }
                    }
                }
            }
            match pending {
                Some((h, j)) => c.add(h, j),
                None => return c,
            }
        }
    }

    fn add(&mut self, h: P, j: usize) {
        if j == self.base.len() {
            let b = (0..self.n).find(|&x| h[x] as usize != x).unwrap();
            self.base.push(b);
            self.gens.push(Vec::new());
            self.trans.push(HashMap::from([(b, ident(self.n))]));
        }
        for i in 0..=j {
            self.gens[i].push(h.clone());
            // orbit closure
            let mut stack: Vec<usize> = self.trans[i].keys().copied().collect();
            while let Some(p) = stack.pop() {
                for s in &self.gens[i] {
                    let q = s[p] as usize;
                    if !self.trans[i].contains_key(&q) {
                        let u = mul(&self.trans[i][&p], s);
                        self.trans[i].insert(q, u);
                        stack.push(q);
                    }
                }
            }
        }
    }

    fn sift(&self, g: &P, from: usize) -> (P, usize) {
        let mut h = g.clone();
        for i in from..self.base.len() {
            let x = h[self.base[i]] as usize;
            match self.trans[i].get(&x) {
                None => return (h, i),
                Some(u) => h = mul(&h, &inv(u)),
            }
        }
        (h, self.base.len())
    }

    fn contains(&self, g: &P) -> bool {
        let (h, j) = self.sift(g, 0);
        j == self.base.len() && is_id(&h)
    }

    fn order(&self) -> BigUint {
        self.trans
            .iter()
            .fold(BigUint::one(), |acc, t| acc * BigUint::from(t.len()))
    }
}

fn closure(n: usize, gens: &[P], cap: usize) -> Option<Vec<P>> {
    let mut seen: HashSet<P> = HashSet::new();
    let mut list = vec![ident(n)];
    seen.insert(ident(n));
    let mut i = 0;
    while i < list.len() {
        for g in gens {
            let y = mul(&list[i], g);
            if seen.insert(y.clone()) {
                list.push(y);
                if list.len() > cap {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(list)
}

fn cyclic_or_dihedral(els: &[P]) -> bool {
    let n = els.len() as u64;
    if n <= 2 {
        return true;
    }
    let orders: Vec<u64> = els.iter().map(elem_order).collect();
    if orders.contains(&n) {
        return true;
    }
    if n % 2 == 1 {
        return false;
    }
    let m = n / 2;
    for (c, &oc) in els.iter().zip(&orders) {
        if oc != m {
            continue;
        }
        let mut powers = HashSet::new();
        let mut x = ident(c.len());
        for _ in 0..m {
            powers.insert(x.clone());
            x = mul(&x, c);
        }
        let cinv = inv(c);
        for (t, &ot) in els.iter().zip(&orders) {
            if ot == 2 && !powers.contains(t) && mul(&mul(t, c), t) == cinv {
                return true;
            }
        }
    }
    false
}

/// Group data the certificate refers to.
pub struct CertificateContext<'a> {
    pub x_gens: &'a [Perm],
    pub xa_gens: &'a [Perm],
    pub g_gens: &'a [Perm],
}

/// Re-checks every invariant of the certificate; returns the failed checks.
pub fn validate_certificate(ctx: &CertificateContext, cert: &EmbeddingCertificate, cap: usize) -> Vec<String> {
    let n = cert.g.degree();
    let raw = |v: &[Perm]| -> Vec<P> { v.iter().map(|p| p.images().to_vec()).collect() };
    let (xg, ag, gg) = (raw(ctx.x_gens), raw(ctx.xa_gens), raw(ctx.g_gens));
    let g: P = cert.g.images().to_vec();
    let h: P = cert.h.images().to_vec();
    let mut bad = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };

    let x = Chain::new(n, &xg);
    let gch = Chain::new(n, &gg);
    let Some(xa) = closure(n, &ag, cap) else {
        return vec!["vertex stabilizer too large to enumerate".into()];
    };
    let xa_set: HashSet<P> = xa.iter().cloned().collect();
    let hinv = inv(&h);

    check(is_id(&mul(&g, &g)) && !is_id(&g), "g is an involution");
    check(gch.contains(&g), "g lies in G");
    check(xa_set.contains(&mul(&g, &hinv)), "alpha^g = beta");
    check(xa_set.contains(&mul(&h, &g)), "beta^g = alpha");
    check(!xa_set.contains(&h), "beta differs from alpha");

    let xab: Vec<P> = xa
        .iter()
        .filter(|y| xa_set.contains(&mul(&mul(&h, y), &hinv)))
        .cloned()
        .collect();
    let xab_set: HashSet<P> = xab.iter().cloned().collect();
    check(BigUint::from(xab.len()) == cert.xab_order, "|X_ab| recomputed");
    check(
        xab.iter().all(|y| xab_set.contains(&mul(&mul(&g, y), &g))),
        "g normalizes X_ab",
    );

    let ga: Vec<P> = xa.iter().filter(|y| gch.contains(y)).cloned().collect();
    let gab: Vec<P> = ga.iter().filter(|y| xab_set.contains(*y)).cloned().collect();
    check(ga.len() as u64 == cert.ga_order, "|G_a| recomputed");
    check(gab.len() as u64 == cert.gab_order, "|G_ab| recomputed");
    check(gab.len() <= 2, "|G_ab| <= 2");
    check(cyclic_or_dihedral(&ga), "G_a cyclic or dihedral");

    let xo = x.order();
    let val_x = xa.len() / xab.len().max(1);
    let val_g = ga.len() / gab.len().max(1);
    check(val_x == val_g, "valency computations agree");
    check(val_x as u64 == cert.valency && val_x >= 3, "valency >= 3");
    check(
        BigUint::from(xa.len()) * BigUint::from(gab.len()) == BigUint::from(ga.len()) * BigUint::from(xab.len()),
        "X_a = G_a X_ab",
    );
    check(
        gch.order() * BigUint::from(xa.len()) == &xo * BigUint::from(ga.len()),
        "X = G X_a",
    );
    check(
        &xo / BigUint::from(xa.len()) == BigUint::from(cert.vertices),
        "vertex count",
    );
    let mut span = ag.clone();
    span.push(g.clone());
    check(Chain::new(n, &span).order() == xo, "<X_a, g> = X");
    check(xo == cert.x_order, "|X| recomputed");
    bad
}
