//! The prime-degree example: the sieve for admissible primes, the coset
//! construction on `[A_p : C_p]`, and the explicit groups behind the
//! point-stabilizer factorisations of `A_n` and `S_n`.

use std::collections::HashMap;

use arcmaps_core::group::factorial;
use arcmaps_core::structure::classify_cyclic_dihedral;
use arcmaps_core::{gate, Error, Limits, Perm, PermGroup, Result};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

pub const PI_SIEVE_MAX: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exclusion {
    OneModFour,
    AtMostThree,
    Exceptional,
    /// `p = (q^d - 1)/(q - 1)`.
    ProjectiveCount { q: u64, d: u32 },
}

impl std::fmt::Display for Exclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exclusion::OneModFour => write!(f, "1 mod 4"),
            Exclusion::AtMostThree => write!(f, "at most 3"),
            Exclusion::Exceptional => write!(f, "exceptional prime"),
            Exclusion::ProjectiveCount { q, d } => write!(f, "({q}^{d}-1)/({q}-1)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PiReport {
    pub limit: u64,
    pub primes: Vec<u64>,
    pub excluded: Vec<(u64, Exclusion)>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut r = q;
    while r % p == 0 {
        r /= p;
    }
    r == 1
}

/// Smallest `(q, d)` with `p = 1 + q + ... + q^(d-1)`, `q` a prime power, `d >= 2`.
pub fn projective_witness(p: u64) -> Option<(u64, u32)> {
    let max_d = 64 - p.leading_zeros() + 1;
    for d in 2..=max_d {
        for q in 2..p {
            let mut sum = 0u64;
            let mut term = 1u64;
            for _ in 0..d {
                sum = sum.saturating_add(term);
                term = term.saturating_mul(q);
            }
            if sum > p {
                break;
            }
            if sum == p && is_prime_power(q) {
                return Some((q, d));
            }
        }
    }
    None
}

pub fn pi_sieve(limit: u64) -> Result<PiReport> {
    if limit > PI_SIEVE_MAX {
        return Err(Error::LimitExceeded(format!("sieve limit {limit} > {PI_SIEVE_MAX}")));
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut report = PiReport {
        limit,
        primes: Vec::new(),
        excluded: Vec::new(),
    };
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
        let p = p as u64;
        let why = if p <= 3 {
            Some(Exclusion::AtMostThree)
        } else if p % 4 == 1 {
            Some(Exclusion::OneModFour)
        } else if p == 11 || p == 23 {
            Some(Exclusion::Exceptional)
        } else {
            projective_witness(p).map(|(q, d)| Exclusion::ProjectiveCount { q, d })
        };
        match why {
            Some(w) => report.excluded.push((p, w)),
            None => report.primes.push(p),
        }
    }
    Ok(report)
}

/// `A_p` acting on the cosets of `C_p = <(1,...,p)>`, each coset named by
/// its unique representative in `K = A_{p-1}` (the stabilizer of `p`).
#[derive(Clone, Debug)]
pub struct K1Instance {
    pub p: u64,
    /// `|I| = (p-1)!/2`.
    pub n: BigUint,
    /// Elements of `K` in the order used to number `I`; `ν` is the identity at 0.
    pub points: Vec<Perm>,
    pub h_gens: Vec<Perm>,
    /// Right multiplication by generators of `K`.
    pub k_gens: Vec<Perm>,
    /// `Cx ↦ Cx^{g_0}` with `g_0` conjugation by `(1,2)`.
    pub g: Perm,
}

fn alt_generators(m: usize, degree: usize) -> Vec<Perm> {
    // (1,2,3) and an (m-2)- or (m-1)-cycle, the standard pair for A_m.
    let three = Perm::from_cycles(degree, &[vec![0, 1, 2]]).unwrap();
    let long = if m % 2 == 1 {
        Perm::from_cycles(degree, &[(0..m).collect()]).unwrap()
    } else {
        Perm::from_cycles(degree, &[(1..m).collect()]).unwrap()
    };
    vec![three, long]
}

pub fn k1_construction(p: u64, limits: &Limits) -> Result<K1Instance> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::BadParams(format!("p = {p}: the construction needs p >= 5")));
    }
    let n = factorial(p as usize - 1) / 2u32;
    let size = match n.to_u64() {
        Some(s) if s <= limits.coset_index => s as usize,
        _ => return Err(gate("coset action of A_p on C_p", &n, limits.coset_index)),
    };
    let pu = p as usize;
    let k = PermGroup::build(
        pu,
        alt_generators(pu - 1, pu),
        &arcmaps_core::BuildOptions {
            known_order: Some(n.clone()),
            ..Default::default()
        },
    )?;
    let points = k.elements(limits.enumeration.max(size as u64))?;
    debug_assert_eq!(points.len(), size);
    let index: HashMap<&[u32], usize> = points.iter().enumerate().map(|(i, x)| (x.images(), i)).collect();
    let c = Perm::from_cycles(pu, &[(0..pu).collect()])?;
    let c_pows: Vec<Perm> = (0..pu as u64).map(|e| c.pow(e)).collect();
    let last = pu - 1;
    // Coset C·y meets K in the unique c·y fixing the last point.
    let rep_of = |y: &Perm| -> usize {
        let need = y.inverse().apply(last);
        let cc = c_pows.iter().find(|cc| cc.apply(last) == need).expect("C is regular");
        index[cc.mul(y).images()]
    };
    let induce = |f: &dyn Fn(&Perm) -> usize| -> Perm {
        Perm::from_images_unchecked(points.iter().map(|x| f(x) as u32).collect())
    };
    let h_gens: Vec<Perm> = alt_generators(pu, pu)
        .iter()
        .map(|h| induce(&|x: &Perm| rep_of(&x.mul(h))))
        .collect();
    let k_gens: Vec<Perm> = k
        .generators()
        .iter()
        .map(|s| induce(&|x: &Perm| index[x.mul(s).images()]))
        .collect();
    let t = Perm::from_cycles(pu, &[vec![0, 1]])?;
    let g = induce(&|x: &Perm| index[x.conjugate_by(&t).images()]);
    Ok(K1Instance {
        p,
        n,
        points,
        h_gens,
        k_gens,
        g,
    })
}

#[derive(Clone, Debug)]
pub struct K1Report {
    pub p: u64,
    pub degree: BigUint,
    pub involution: bool,
    pub fixed: u64,
    pub fixed_expected: BigUint,
    pub sign: i8,
    pub sign_expected: i8,
    pub normalizes_k: bool,
    pub moves_h: bool,
    /// `|<H, g>|` when requested, and whether it is `|Alt(I)|`.
    pub span: Option<(BigUint, bool)>,
}

impl K1Report {
    pub fn claim1(&self) -> bool {
        self.involution && BigUint::from(self.fixed) == self.fixed_expected && self.sign == self.sign_expected
    }

    pub fn claim2(&self) -> bool {
        self.normalizes_k && self.moves_h
    }
}

pub fn k1_verify(p: u64, full_span: bool, limits: &Limits) -> Result<K1Report> {
    let inst = k1_construction(p, limits)?;
    let deg = inst.points.len();
    let g = &inst.g;
    let fixed = g.fixed_count() as u64;
    let fixed_expected = factorial(p as usize - 3);
    let moved = &inst.n - &fixed_expected;
    let sign_expected = if (moved / 2u32 % 2u32).is_one() { -1 } else { 1 };
    let kgrp = PermGroup::build(
        deg,
        inst.k_gens.clone(),
        &arcmaps_core::BuildOptions {
            known_order: Some(inst.n.clone()),
            ..Default::default()
        },
    )?;
    let hgrp = PermGroup::build(
        deg,
        inst.h_gens.clone(),
        &arcmaps_core::BuildOptions {
            known_order: Some(factorial(p as usize) / 2u32),
            ..Default::default()
        },
    )?;
    let normalizes_k = inst.k_gens.iter().all(|s| kgrp.contains(&s.conjugate_by(g)));
    let moves_h = inst.h_gens.iter().any(|s| !hgrp.contains(&s.conjugate_by(g)));
    let span = if full_span || deg <= 64 {
        let s = hgrp.generated_with(std::slice::from_ref(g))?;
        let alt = factorial(deg) / 2u32;
        let order = s.order().clone();
        let is_alt = order == alt;
        Some((order, is_alt))
    } else {
        None
    };
    Ok(K1Report {
        p,
        degree: inst.n.clone(),
        involution: !g.is_identity() && g.mul(g).is_identity(),
        fixed,
        fixed_expected,
        sign: g.sign(),
        sign_expected,
        normalizes_k,
        moves_h,
        span,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemarkCase {
    /// `A = A_{n-1}` in `A_n`, `B ≤ A_n` transitive with cyclic/dihedral `B_x`.
    A1i,
    /// `A = A_{n-1}` in `S_n`, `B` odd with `B ∩ A_n` regular.
    A1ii,
}

#[derive(Clone, Debug)]
pub struct RemarkExample {
    pub n: usize,
    pub case: RemarkCase,
    pub b: PermGroup,
    /// Failed post-conditions; empty when the example is valid.
    pub failures: Vec<String>,
}

/// Points `i` and `i'` of `{1..m, 1'..m'}` as `i-1` and `m+i-1`.
fn two_m_example(m: usize) -> Result<Vec<Perm>> {
    let n = 2 * m;
    let un = |i: usize| i - 1;
    let pr = |i: usize| m + i - 1;
    let g = Perm::from_cycles(n, &[(1..=m).map(un).collect(), (1..=m).map(pr).collect()])?;
    let mut cycles = vec![vec![un(m), pr(m)]];
    let first = if m % 4 == 3 {
        1
    } else {
        cycles.push(vec![un(1), pr(1)]);
        cycles.push(vec![un(2), pr(2)]);
        2
    };
    for i in first..=(m - 1) / 2 {
        let (a, b) = (2 * i - 1, 2 * i);
        cycles.push(vec![un(a), pr(a), un(b), pr(b)]);
    }
    Ok(vec![g, Perm::from_cycles(n, &cycles)?])
}

/// `F_2^a × Z_m` with points numbered `v·m + j`.
fn translation_example(n: usize) -> Result<Vec<Perm>> {
    let a = n.trailing_zeros();
    let m = n >> a;
    let pt = |v: usize, j: usize| v * m + j;
    let mut gens = Vec::new();
    for bit in 0..a {
        let imgs = (0..n).map(|x| pt((x / m) ^ (1 << bit), x % m) as u32).collect();
        gens.push(Perm::from_images(imgs)?);
    }
    if m > 1 {
        let imgs = (0..n).map(|x| pt(x / m, (x % m + 1) % m) as u32).collect();
        gens.push(Perm::from_images(imgs)?);
    }
    Ok(gens)
}

pub fn remark_examples(n: usize, case: RemarkCase, limits: &Limits) -> Result<RemarkExample> {
    if n < 5 {
        return Err(Error::BadParams(format!("n = {n}: need n >= 5")));
    }
    let gens = match case {
        RemarkCase::A1i if n % 2 == 1 => vec![Perm::from_cycles(n, &[(0..n).collect()])?],
        RemarkCase::A1i if n % 4 == 0 => translation_example(n)?,
        RemarkCase::A1i => two_m_example(n / 2)?,
        RemarkCase::A1ii if n % 4 == 1 => {
            return Err(Error::BadCase(format!("n = {n} is 1 mod 4: no dihedral example with an odd permutation")))
        }
        RemarkCase::A1ii => {
            let g = Perm::from_cycles(n, &[(0..n).collect()])?;
            let h = if n % 2 == 0 {
                Perm::from_cycles(n, &(1..=n / 2).map(|i| vec![i - 1, n - i]).collect::<Vec<_>>())?
            } else {
                Perm::from_cycles(n, &(1..=(n - 1) / 2).map(|i| vec![i - 1, n - i - 1]).collect::<Vec<_>>())?
            };
            vec![g, h]
        }
    };
    let b = PermGroup::new(n, gens)?;
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    check(b.is_transitive(), "B is transitive");
    let last = n - 1;
    match case {
        RemarkCase::A1i => {
            check(b.generators().iter().all(|g| g.sign() == 1), "B lies in A_n");
            let bx = b.stabilizer(last)?;
            check(classify_cyclic_dihedral(&bx, limits)?.is_cyclic_or_dihedral(), "B_x is cyclic or dihedral");
        }
        RemarkCase::A1ii => {
            check(b.generators().iter().any(|g| g.sign() == -1), "B contains an odd permutation");
            let even = even_part(&b, limits)?;
            check(even.is_transitive(), "B ∩ A_n is transitive");
            check(even.stabilizer(last)?.is_trivial(), "(B ∩ A_n)_x = 1");
        }
    }
    Ok(RemarkExample { n, case, b, failures })
}

/// `B ∩ A_n` by enumeration.
pub fn even_part(b: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let mut gens = Vec::new();
    let mut acc = PermGroup::trivial(b.degree());
    let target = if b.generators().iter().all(|g| g.sign() == 1) {
        b.order().clone()
    } else {
        b.order() / 2u32
    };
    let mut err = None;
    b.for_each_element(limits.enumeration, |x| {
        if err.is_some() || acc.order() == &target || x.sign() == -1 || acc.contains(x) {
            return;
        }
        gens.push(x.clone());
        match PermGroup::new(b.degree(), gens.clone()) {
            Ok(g) => acc = g,
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}
