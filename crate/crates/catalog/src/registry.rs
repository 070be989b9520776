//! Named groups and the group spec grammar.
//!
//! ```text
//! spec  := family | "gens" DEG ":" WORD* | "stab" grp PT | "setstab" grp "{" PT,... "}"
//!        | "span" grp ":" WORD* | "meet" grp grp | "file" NAME | IDENT | "[" spec "]"
//! grp   := "[" spec "]" | IDENT
//! ```
//!
//! Families: `S n`, `A n`, `C n`, `D 2m`, `PSL 2 q`, `PGL 2 q`, `PGammaL 2 q`
//! (on `q+1` points: point `i+1` is the field element `i`, point `q+1` is
//! infinity), `PSL 3 q` (points of `PG_2(q)`, lexicographic), `AGL1 q`,
//! `AGammaL1 q` (point `i+1` is the field element `i`), `ASL 2 q` (vectors,
//! lexicographic), `PSL3Pol q` and `SingerNorm q` (points then lines of the
//! cyclic model of `PG_2(q)`, `q` in {2, 8}), `SO 5 3`, `Omega 5 3`, `Mon 5 3`
//! (on the 80 singular vectors), `M 11`, `M 12`, `M 23`, `M 24`.
//! Field elements are numbered by their base-`p` coefficient digits.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::OnceLock;

use arcmaps_core::ops::{intersection, setwise_stabilizer};
use arcmaps_core::{BuildOptions, Error, Limits, Perm, PermGroup, Result};
use arcmaps_geometry::linear::{all_vectors, projective_points, sl_generators, transvection};
use arcmaps_geometry::{make_field, o53_suite, singer_plane, Domain, Matrix, O53Suite, SmallField};
use num_bigint::BigUint;

use crate::records::parse_records;

const MATHIEU: &str = include_str!("../data/mathieu.gens");

/// Resolves specs; identifiers are looked up in `bindings`, `file` specs in `data_dir`.
#[derive(Clone, Debug, Default)]
pub struct Resolver {
    pub bindings: HashMap<String, PermGroup>,
    pub data_dir: Option<PathBuf>,
    pub limits: Limits,
}

pub fn named_group(spec: &str) -> Result<PermGroup> {
    Resolver::default().resolve(spec)
}

fn unknown(s: &str) -> Error {
    Error::UnknownSpec(s.to_string())
}

fn num(tok: Option<&str>, s: &str) -> Result<u64> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| unknown(s))
}

/// Splits a leading group operand off `rest`.
fn take_group(rest: &str) -> Result<(&str, &str)> {
    let rest = rest.trim_start();
    if let Some(inner) = rest.strip_prefix('[') {
        let mut depth = 1;
        for (i, c) in inner.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok((&inner[..i], &inner[i + 1..]));
                    }
                }
                _ => {}
            }
        }
        return Err(Error::UnknownSpec(format!("unbalanced brackets in `{rest}`")));
    }
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    if end == 0 {
        return Err(unknown(rest));
    }
    Ok((&rest[..end], &rest[end..]))
}

pub fn parse_words(words: &str, degree: usize) -> Result<Vec<Perm>> {
    words.split_whitespace().map(|w| Perm::parse(w, degree)).collect()
}

fn build(degree: usize, gens: Vec<Perm>, order: BigUint) -> Result<PermGroup> {
    let g = PermGroup::build(
        degree,
        gens,
        &BuildOptions {
            known_order: Some(order.clone()),
            ..Default::default()
        },
    )?;
    if *g.order() != order {
        return Err(Error::BadParams(format!("built order {} differs from {order}", g.order())));
    }
    Ok(g)
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

fn images(n: usize, f: impl Fn(usize) -> usize) -> Perm {
    Perm::from_images((0..n).map(|i| f(i) as u32).collect()).expect("bijection")
}

fn symmetric(n: u64) -> Result<PermGroup> {
    let n = n as usize;
    if n < 2 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    build(n, vec![images(n, |i| (i + 1) % n), images(n, |i| [1, 0].get(i).copied().unwrap_or(i))], factorial(n as u64))
}

fn alternating(n: u64) -> Result<PermGroup> {
    let n = n as usize;
    if n < 3 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let three = images(n, |i| [1, 2, 0].get(i).copied().unwrap_or(i));
    // An odd-length cycle on all points or on all but the first.
    let long = if n % 2 == 1 {
        images(n, |i| (i + 1) % n)
    } else {
        images(n, |i| if i == 0 { 0 } else { i % (n - 1) + 1 })
    };
    build(n, vec![three, long], factorial(n as u64) / 2u32)
}

fn dihedral(order: u64) -> Result<PermGroup> {
    if order % 2 != 0 || order < 4 {
        return Err(Error::BadParams(format!("dihedral order {order}")));
    }
    let m = (order / 2) as usize;
    if m == 2 {
        let gens = vec![images(4, |i| i ^ 1), images(4, |i| i ^ 2)];
        return build(4, gens, big(4));
    }
    build(m, vec![images(m, |i| (i + 1) % m), images(m, |i| (m - i) % m)], big(order))
}

fn frobenius_on(k: &SmallField, x: u8) -> u8 {
    k.pow(x, k.p)
}

/// Projective line with point `i` the element `i` and point `q` infinity.
fn line_domain(k: &SmallField) -> Domain {
    let mut pts: Vec<Vec<u8>> = k.elements().map(|x| vec![x, 1]).collect();
    pts.push(vec![1, 0]);
    Domain::new(pts, true)
}

fn field(q: u64) -> Result<SmallField> {
    if q > 81 {
        return Err(Error::BadParams(format!("field order {q} above 81")));
    }
    make_field(q)
}

fn line_group(kind: &str, q: u64) -> Result<PermGroup> {
    let k = field(q)?;
    let dom = line_domain(&k);
    let n = dom.len();
    let d: u64 = if q % 2 == 1 { 2 } else { 1 };
    let pgl = big(q) * (q * q - 1);
    let mut gens = Vec::new();
    let order = match kind {
        "PSL" => {
            for m in sl_generators(&k, 2) {
                gens.push(dom.perm(&k, &m)?);
            }
            pgl / d
        }
        "PGL" | "PGammaL" => {
            let diag: Matrix = vec![vec![k.primitive, 0], vec![0, 1]];
            for m in [diag, transvection(2, 1, 0, 1), vec![vec![0, 1], vec![1, 0]]] {
                gens.push(dom.perm(&k, &m)?);
            }
            if kind == "PGammaL" {
                gens.push(images(n, |i| if i == n - 1 { i } else { frobenius_on(&k, i as u8) as usize }));
                pgl * k.f
            } else {
                pgl
            }
        }
        _ => unreachable!(),
    };
    build(n, gens, order)
}

fn affine_line(q: u64, semilinear: bool) -> Result<PermGroup> {
    let k = field(q)?;
    let n = q as usize;
    let mut gens = vec![images(n, |x| k.mul(x as u8, k.primitive) as usize)];
    let mut basis = 1u32;
    for _ in 0..k.f {
        gens.push(images(n, |x| k.add(x as u8, basis as u8) as usize));
        basis *= k.p;
    }
    let mut order = big(q * (q - 1));
    if semilinear {
        gens.push(images(n, |x| frobenius_on(&k, x as u8) as usize));
        order *= k.f;
    }
    build(n, gens, order)
}

fn affine_plane_sl(q: u64) -> Result<PermGroup> {
    let k = field(q)?;
    let vecs = all_vectors(&k, 2);
    let dom = Domain::new(vecs.clone(), false);
    let mut gens = Vec::new();
    for m in sl_generators(&k, 2) {
        gens.push(dom.perm(&k, &m)?);
    }
    for e in [[1u8, 0], [0, 1]] {
        let t = vecs
            .iter()
            .map(|v| dom.position(&[k.add(v[0], e[0]), k.add(v[1], e[1])]).unwrap() as u32)
            .collect();
        gens.push(Perm::from_images(t)?);
    }
    build(vecs.len(), gens, big(q * q) * (q * (q * q - 1)))
}

fn psl3(q: u64) -> Result<PermGroup> {
    if q > 9 {
        return Err(Error::BadParams(format!("PSL_3({q}) above q = 9")));
    }
    let k = field(q)?;
    let dom = Domain::new(projective_points(&k, 3), true);
    let gens = sl_generators(&k, 3).iter().map(|m| dom.perm(&k, m)).collect::<Result<Vec<_>>>()?;
    let d: u64 = if (q - 1) % 3 == 0 { 3 } else { 1 };
    build(dom.len(), gens, big(q * q * q) * (q * q * q - 1) * (q * q - 1) / d)
}

/// The orthogonal-group suite, built once per process.
pub fn o53() -> Result<&'static O53Suite> {
    static SUITE: OnceLock<std::result::Result<O53Suite, Error>> = OnceLock::new();
    SUITE.get_or_init(o53_suite).as_ref().map_err(|e| e.clone())
}

fn mathieu(n: u64) -> Result<PermGroup> {
    let want = format!("M{n}");
    for r in parse_records(MATHIEU)? {
        if r.get("name") == Some(want.as_str()) {
            let degree: usize = r.require("degree")?.parse().map_err(|_| unknown(&want))?;
            let order: BigUint = r.require("order")?.parse().map_err(|_| unknown(&want))?;
            return build(degree, parse_words(r.require("gens")?, degree)?, order);
        }
    }
    Err(unknown(&want))
}

impl Resolver {
    pub fn new(limits: Limits) -> Resolver {
        Resolver {
            limits,
            ..Default::default()
        }
    }

    pub fn bind(&mut self, name: &str, g: PermGroup) {
        self.bindings.insert(name.to_string(), g);
    }

    pub fn resolve(&self, spec: &str) -> Result<PermGroup> {
        let s = spec.trim();
        if s.starts_with('[') {
            let (inner, rest) = take_group(s)?;
            if !rest.trim().is_empty() {
                return Err(unknown(s));
            }
            return self.resolve(inner);
        }
        let (head, rest) = s.split_once(char::is_whitespace).unwrap_or((s, ""));
        let rest = rest.trim();
        let mut toks = rest.split_whitespace();
        match head {
            "gens" => {
                let (deg, words) = rest.split_once(':').ok_or_else(|| unknown(s))?;
                let deg: usize = deg.trim().parse().map_err(|_| unknown(s))?;
                PermGroup::new(deg, parse_words(words, deg)?)
            }
            "span" => {
                let (g, rest) = take_group(rest)?;
                let g = self.resolve(g)?;
                let words = rest.trim().strip_prefix(':').ok_or_else(|| unknown(s))?;
                g.subgroup(parse_words(words, g.degree())?)
            }
            "stab" => {
                let (g, rest) = take_group(rest)?;
                let g = self.resolve(g)?;
                let pt = num(Some(rest.trim()), s)? as usize;
                if pt == 0 || pt > g.degree() {
                    return Err(Error::PointOutOfRange { point: pt, degree: g.degree() });
                }
                g.stabilizer(pt - 1)
            }
            "setstab" => {
                let (g, rest) = take_group(rest)?;
                let g = self.resolve(g)?;
                let body = rest.trim().strip_prefix('{').and_then(|b| b.strip_suffix('}')).ok_or_else(|| unknown(s))?;
                let mut set = Vec::new();
                for t in body.split(',') {
                    let pt: usize = t.trim().parse().map_err(|_| unknown(s))?;
                    if pt == 0 || pt > g.degree() {
                        return Err(Error::PointOutOfRange { point: pt, degree: g.degree() });
                    }
                    set.push(pt - 1);
                }
                setwise_stabilizer(&g, &set, &self.limits)
            }
            "meet" => {
                let (a, rest) = take_group(rest)?;
                let (b, rest) = take_group(rest)?;
                if !rest.trim().is_empty() {
                    return Err(unknown(s));
                }
                intersection(&self.resolve(a)?, &self.resolve(b)?, &self.limits)
            }
            "file" => {
                let dir = self
                    .data_dir
                    .as_ref()
                    .ok_or_else(|| arcmaps_core::gate("data file", rest, "no data directory"))?;
                let path = dir.join(rest);
                let text = std::fs::read_to_string(&path)
                    .map_err(|_| arcmaps_core::gate("data file", path.display(), "file not present"))?;
                let recs = parse_records(&text)?;
                let r = recs.first().ok_or_else(|| unknown(s))?;
                let degree: usize = r.require("degree")?.parse().map_err(|_| unknown(s))?;
                let gens = parse_words(r.require("gens")?, degree)?;
                match r.get("order") {
                    Some(o) => build(degree, gens, o.parse().map_err(|_| unknown(s))?),
                    None => Err(Error::BadParams(format!("{}: data files must state `order`", path.display()))),
                }
            }
            "S" => symmetric(num(toks.next(), s)?),
            "A" => alternating(num(toks.next(), s)?),
            "C" => {
                let n = num(toks.next(), s)? as usize;
                build(n.max(1), vec![images(n.max(1), |i| (i + 1) % n.max(1))], big(n.max(1) as u64))
            }
            "D" => dihedral(num(toks.next(), s)?),
            "PSL" | "PGL" | "PGammaL" => {
                let d = num(toks.next(), s)?;
                let q = num(toks.next(), s)?;
                match (head, d) {
                    (_, 2) => line_group(head, q),
                    ("PSL", 3) => psl3(q),
                    _ => Err(unknown(s)),
                }
            }
            "AGL1" => affine_line(num(toks.next(), s)?, false),
            "AGammaL1" => affine_line(num(toks.next(), s)?, true),
            "ASL" => match num(toks.next(), s)? {
                2 => affine_plane_sl(num(toks.next(), s)?),
                _ => Err(unknown(s)),
            },
            "PSL3Pol" => singer_plane(num(toks.next(), s)?)?.full_group(),
            "SingerNorm" => singer_plane(num(toks.next(), s)?)?.singer_normalizer(),
            "SO" | "Omega" | "Mon" if rest == "5 3" => {
                let suite = o53()?;
                Ok(match head {
                    "SO" => suite.x.clone(),
                    "Omega" => suite.x0.clone(),
                    _ => suite.monomial.clone(),
                })
            }
            "M" => mathieu(num(toks.next(), s)?),
            name if rest.is_empty() => self.bindings.get(name).cloned().ok_or_else(|| unknown(s)),
            _ => Err(unknown(s)),
        }
    }
}
