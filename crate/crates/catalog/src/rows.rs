//! Table rows, their verifier and the suite runner.
//!
//! A catalog file is a list of records (see [`crate::records`]). Each row
//! names three group specs `x`, `a`, `b`; `a` is resolved with `X` bound to
//! the group of `x`, and `b` with `A` bound as well. What is checked depends
//! on `kind`:
//!
//! * `embed`: `a` is `X_α`, `b` is `G`. The embedding hypothesis is run and
//!   the certificate of the expected valency is compared, re-validated and
//!   turned into the orbital graph.
//! * `factor`: `X = AB` with `A ∩ B` cyclic or dihedral and both core-free.
//! * `homog`: `b` is a `k`-homogeneous group of degree `n`; its two- and
//!   one-point-pair stabilizers are compared.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use arcmaps_core::factor::{
    check_factorisation, is_core_free, verify_hypothesis, EmbeddingCertificate, FactorisationCertificate,
    HypothesisOptions, Regularity,
};
use arcmaps_core::structure::{classify_cyclic_dihedral, k_homogeneous};
use arcmaps_core::validate::{validate_certificate, CertificateContext};
use arcmaps_core::{Error, Limits, PermGroup, Result, StructureTag};
use arcmaps_geometry::{biplane11_graph, pg3_antiflag_graph, projective_plane};
use arcmaps_graph::{identify_with, invariants, invariants_transitive, orbital_graph, Confirmation, Graph, Reference};
use num_bigint::BigUint;

use crate::records::{parse_records, Record};
use crate::registry::{o53, parse_words, Resolver};

pub const TABLES: [&str; 12] = [
    "t:anmaps",
    "6711tbl",
    "class-maps",
    "spormaptab",
    "tab:Anfactns",
    "tab:B2hom",
    "families",
    "excep-psl",
    "excep-psu",
    "excep-orthog",
    "excep-sp",
    "spor",
];

/// The shipped catalog, one file per table.
pub const CATALOG_FILES: [(&str, &str); 9] = [
    ("t_anmaps.cat", include_str!("../data/t_anmaps.cat")),
    ("6711tbl.cat", include_str!("../data/6711tbl.cat")),
    ("class_maps.cat", include_str!("../data/class_maps.cat")),
    ("spormaptab.cat", include_str!("../data/spormaptab.cat")),
    ("tab_anfactns.cat", include_str!("../data/tab_anfactns.cat")),
    ("tab_b2hom.cat", include_str!("../data/tab_b2hom.cat")),
    ("families.cat", include_str!("../data/families.cat")),
    ("excep_psl.cat", include_str!("../data/excep_psl.cat")),
    ("spor.cat", include_str!("../data/spor.cat")),
];

pub const EXPECTATIONS: &str = include_str!("../data/expectations.txt");

/// Orbital graphs above this many vertices are checked through their
/// certificate only.
pub const GRAPH_GATE: u64 = 100_000;

/// Enumeration cap handed to the certificate validator.
pub const VALIDATOR_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Embed,
    Factor,
    Homog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    Default,
    Optional,
}

impl std::fmt::Display for Tier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Tier::Default => "default",
            Tier::Optional => "optional",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    /// `A ∩ B` for factor rows, `G_α` for embed rows.
    pub meet: Option<StructureTag>,
    pub gab: Option<u64>,
    pub xab: Option<BigUint>,
    pub valency: Option<u64>,
    pub vertices: Option<u64>,
    pub graph: Option<String>,
    pub regularity: Option<Regularity>,
    pub bipartite: Option<bool>,
    pub connected: Option<bool>,
    pub k: Option<usize>,
    pub xy: Option<StructureTag>,
    pub pair: Option<StructureTag>,
    /// Whether some `W` with an odd element has `W ∩ A_n = B`.
    pub odd: Option<bool>,
    /// Words adjoined to `B` to exhibit such a `W`.
    pub odd_extra: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub table: String,
    pub id: String,
    pub kind: Kind,
    pub tier: Tier,
    pub x: String,
    pub a: String,
    pub b: String,
    pub expect: Expected,
    pub note: Option<String>,
    pub file: String,
    pub line: usize,
}

impl CatalogRow {
    pub fn key(&self) -> (usize, String, String) {
        let t = TABLES.iter().position(|t| *t == self.table).unwrap_or(TABLES.len());
        (t, sort_key(&self.id), self.id.clone())
    }
}

/// Row ids sort with embedded numbers compared numerically.
fn sort_key(id: &str) -> String {
    let mut out = String::new();
    let mut digits = String::new();
    for c in id.chars().chain(std::iter::once('\0')) {
        if c.is_ascii_digit() {
            digits.push(c);
            continue;
        }
        if !digits.is_empty() {
            let _ = write!(out, "{:0>12}", digits);
            digits.clear();
        }
        if c != '\0' {
            out.push(c);
        }
    }
    out
}

/// `1`, `Cn`, `Dn` (order `n`) or the long form `Cyclic(n)`.
pub fn parse_tag(s: &str) -> Option<StructureTag> {
    let s = s.trim();
    if s == "1" {
        return Some(StructureTag::Cyclic(1));
    }
    if let Some(n) = s.strip_prefix('C').and_then(|n| n.parse().ok()) {
        return Some(StructureTag::Cyclic(n));
    }
    if let Some(n) = s.strip_prefix('D').and_then(|n| n.parse().ok()) {
        return Some(StructureTag::Dihedral(n));
    }
    StructureTag::parse(s)
}

fn bad(file: &str, r: &Record, msg: impl std::fmt::Display) -> Error {
    Error::BadParams(format!("{file}:{}: {msg}", r.line))
}

const KEYS: [&str; 22] = [
    "table", "row", "kind", "tier", "x", "a", "b", "meet", "ga", "gab", "xab", "valency", "vertices", "graph",
    "regularity", "bipartite", "connected", "k", "xy", "pair", "odd", "odd_extra",
];

fn parse_row(file: &str, r: &Record) -> Result<CatalogRow> {
    for (k, _) in &r.fields {
        if !KEYS.contains(&k.as_str()) && k != "note" {
            return Err(bad(file, r, format_args!("unknown key `{k}`")));
        }
    }
    let table = r.require("table")?.to_string();
    if !TABLES.contains(&table.as_str()) {
        return Err(bad(file, r, format_args!("unknown table `{table}`")));
    }
    let kind = match r.require("kind")? {
        "embed" => Kind::Embed,
        "factor" => Kind::Factor,
        "homog" => Kind::Homog,
        k => return Err(bad(file, r, format_args!("unknown kind `{k}`"))),
    };
    let tier = match r.get("tier").unwrap_or("default") {
        "default" => Tier::Default,
        "optional" => Tier::Optional,
        t => return Err(bad(file, r, format_args!("unknown tier `{t}`"))),
    };
    let tag = |key: &str| -> Result<Option<StructureTag>> {
        r.get(key)
            .map(|v| parse_tag(v).ok_or_else(|| bad(file, r, format_args!("bad structure tag `{v}`"))))
            .transpose()
    };
    let int = |key: &str| -> Result<Option<u64>> {
        r.get(key)
            .map(|v| v.parse().map_err(|_| bad(file, r, format_args!("`{key}` is not an integer"))))
            .transpose()
    };
    let flag = |key: &str| -> Result<Option<bool>> {
        r.get(key)
            .map(|v| match v {
                "yes" => Ok(true),
                "no" => Ok(false),
                _ => Err(bad(file, r, format_args!("`{key}` must be yes or no"))),
            })
            .transpose()
    };
    let expect = Expected {
        meet: tag(if kind == Kind::Embed { "ga" } else { "meet" })?,
        gab: int("gab")?,
        xab: r
            .get("xab")
            .map(|v| v.parse().map_err(|_| bad(file, r, "`xab` is not an integer")))
            .transpose()?,
        valency: int("valency")?,
        vertices: int("vertices")?,
        graph: r.get("graph").filter(|g| *g != "-").map(str::to_string),
        regularity: match r.get("regularity") {
            None => None,
            Some("FlagRegular") => Some(Regularity::FlagRegular),
            Some("ArcRegular") => Some(Regularity::ArcRegular),
            Some(v) => return Err(bad(file, r, format_args!("bad regularity `{v}`"))),
        },
        bipartite: flag("bipartite")?,
        connected: flag("connected")?,
        k: int("k")?.map(|k| k as usize),
        xy: tag("xy")?,
        pair: tag("pair")?,
        odd: flag("odd")?,
        odd_extra: r.get("odd_extra").map(str::to_string),
    };
    if kind == Kind::Embed && r.get("meet").is_some() {
        return Err(bad(file, r, "embed rows state `ga`, not `meet`"));
    }
    if tier == Tier::Default {
        let missing: Vec<&str> = match kind {
            Kind::Embed => [
                ("ga", expect.meet.is_none()),
                ("valency", expect.valency.is_none()),
                ("vertices", expect.vertices.is_none()),
                ("regularity", expect.regularity.is_none()),
                ("graph", r.get("graph").is_none()),
            ]
            .iter()
            .filter(|p| p.1)
            .map(|p| p.0)
            .collect(),
            Kind::Factor => if expect.meet.is_none() { vec!["meet"] } else { vec![] },
            Kind::Homog => [("k", expect.k.is_none()), ("xy", expect.xy.is_none()), ("pair", expect.pair.is_none()), ("odd", expect.odd.is_none())]
                .iter()
                .filter(|p| p.1)
                .map(|p| p.0)
                .collect(),
        };
        if !missing.is_empty() {
            return Err(bad(file, r, format_args!("default-tier row lacks {}", missing.join(", "))));
        }
    }
    Ok(CatalogRow {
        table,
        id: r.require("row")?.to_string(),
        kind,
        tier,
        x: r.require("x")?.to_string(),
        a: r.get("a").unwrap_or("-").to_string(),
        b: r.require("b")?.to_string(),
        expect,
        note: r.get("note").map(str::to_string),
        file: file.to_string(),
        line: r.line,
    })
}

pub fn parse_catalog(file: &str, text: &str) -> Result<Vec<CatalogRow>> {
    parse_records(text)
        .map_err(|e| Error::BadParams(format!("{file}: {e}")))?
        .iter()
        .map(|r| parse_row(file, r))
        .collect()
}

/// Every shipped row, sorted by `(table, row)`; duplicate ids are an error.
pub fn load_catalog() -> Result<Vec<CatalogRow>> {
    let mut rows = Vec::new();
    for (name, text) in CATALOG_FILES {
        rows.extend(parse_catalog(name, text)?);
    }
    sort_rows(rows)
}

pub fn sort_rows(mut rows: Vec<CatalogRow>) -> Result<Vec<CatalogRow>> {
    rows.sort_by_key(|r| r.key());
    for w in rows.windows(2) {
        if w[0].table == w[1].table && w[0].id == w[1].id {
            return Err(Error::BadParams(format!("duplicate row {} {}", w[0].table, w[0].id)));
        }
    }
    Ok(rows)
}

/// `table row tier` lines; `#` comments.
pub fn parse_expectations(text: &str) -> Result<BTreeMap<(String, String), Tier>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let tier = match f.as_slice() {
            [_, _, "default"] => Tier::Default,
            [_, _, "optional"] => Tier::Optional,
            _ => return Err(Error::BadParams(format!("expectations line {}: want `table row tier`", i + 1))),
        };
        if out.insert((f[0].to_string(), f[1].to_string()), tier).is_some() {
            return Err(Error::BadParams(format!("expectations line {}: duplicate", i + 1)));
        }
    }
    Ok(out)
}

/// Completeness check: the rows and the expectations list agree on ids and tiers.
pub fn lint(rows: &[CatalogRow], expectations: &BTreeMap<(String, String), Tier>) -> Vec<String> {
    let mut problems = Vec::new();
    let mut seen = BTreeSet::new();
    for r in rows {
        let key = (r.table.clone(), r.id.clone());
        match expectations.get(&key) {
            None => problems.push(format!("{} {}: row not in the expectations list", r.table, r.id)),
            Some(t) if *t != r.tier => problems.push(format!("{} {}: tier {} but expected {}", r.table, r.id, r.tier, t)),
            _ => {}
        }
        seen.insert(key);
    }
    for ((t, id), tier) in expectations {
        if !seen.contains(&(t.clone(), id.clone())) {
            problems.push(format!("{t} {id}: {tier} row missing from the catalog"));
        }
    }
    problems
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Fail,
    Gated,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Gated => "GATED",
        })
    }
}

/// Group data a certificate refers to, kept so it can be re-validated.
#[derive(Clone, Debug)]
pub struct CertificateGroups {
    pub x: PermGroup,
    pub xa: PermGroup,
    pub g: PermGroup,
}

#[derive(Clone, Debug)]
pub struct RowReport {
    pub table: String,
    pub id: String,
    pub tier: Tier,
    pub outcome: Outcome,
    /// Observed values in a fixed order.
    pub observed: Vec<(String, String)>,
    pub mismatches: Vec<String>,
    pub factorisation: Option<FactorisationCertificate>,
    pub certificate: Option<EmbeddingCertificate>,
    pub groups: Option<CertificateGroups>,
    /// Failed checks of the independent validator; empty when it agreed.
    pub validation: Option<Vec<String>>,
    pub graph: Option<Graph>,
    pub identified: Option<(String, Confirmation)>,
}

impl RowReport {
    fn new(row: &CatalogRow) -> RowReport {
        RowReport {
            table: row.table.clone(),
            id: row.id.clone(),
            tier: row.tier,
            outcome: Outcome::Pass,
            observed: Vec::new(),
            mismatches: Vec::new(),
            factorisation: None,
            certificate: None,
            groups: None,
            validation: None,
            graph: None,
            identified: None,
        }
    }

    fn see(&mut self, key: &str, value: impl std::fmt::Display) {
        self.observed.push((key.to_string(), value.to_string()));
    }

    fn expect<T: PartialEq + std::fmt::Display>(&mut self, what: &str, want: Option<&T>, got: &T) {
        if let Some(w) = want {
            if w != got {
                self.mismatches.push(format!("{what}: expected {w}, got {got}"));
            }
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.mismatches.push(what.into());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.observed.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteContext {
    pub limits: Limits,
    pub data_dir: Option<PathBuf>,
}

/// Reference graphs the expected `graph` field may name.
pub fn reference_graph(name: &str) -> Result<Option<Graph>> {
    Ok(Some(match name {
        "Heawood" => projective_plane(2)?.incidence,
        "PG_2(8) incidence" => projective_plane(8)?.incidence,
        "biplane incidence" => biplane11_graph(),
        "antiflag PG_3(2)" => pg3_antiflag_graph(),
        "Gamma" => o53()?.gamma.clone(),
        "Gamma-hat" => o53()?.gamma_hat.clone(),
        _ => return Ok(None),
    }))
}

pub fn verify_row(row: &CatalogRow, ctx: &SuiteContext) -> RowReport {
    let mut rep = RowReport::new(row);
    let mut res = Resolver::new(ctx.limits.clone());
    res.data_dir = ctx.data_dir.clone();
    let run = match row.kind {
        Kind::Embed => verify_embed(row, &mut res, &ctx.limits, &mut rep),
        Kind::Factor => verify_factor(row, &mut res, &ctx.limits, &mut rep),
        Kind::Homog => verify_homog(row, &mut res, &ctx.limits, &mut rep),
    };
    match run {
        Err(e @ Error::GateExceeded { .. }) => {
            rep.outcome = Outcome::Gated;
            rep.mismatches.push(e.to_string());
        }
        Err(e) => {
            rep.outcome = Outcome::Fail;
            rep.mismatches.push(e.to_string());
        }
        Ok(()) if !rep.mismatches.is_empty() => rep.outcome = Outcome::Fail,
        Ok(()) => {}
    }
    rep
}

fn resolve_xab(row: &CatalogRow, res: &mut Resolver) -> Result<(PermGroup, PermGroup, PermGroup)> {
    let x = res.resolve(&row.x)?;
    res.bind("X", x.clone());
    let a = res.resolve(&row.a)?;
    res.bind("A", a.clone());
    let b = res.resolve(&row.b)?;
    Ok((x, a, b))
}

fn verify_factor(row: &CatalogRow, res: &mut Resolver, limits: &Limits, rep: &mut RowReport) -> Result<()> {
    let (x, a, b) = resolve_xab(row, res)?;
    let c = check_factorisation(&x, &a, &b, limits)?;
    rep.see("|X|", &c.x_order);
    rep.see("|A|", &c.a_order);
    rep.see("|B|", &c.b_order);
    rep.see("|A∩B|", &c.meet_order);
    rep.see("meet", &c.meet_tag);
    rep.require(c.order_equation_holds(), "|X||A∩B| != |A||B|");
    rep.require(c.corefree_a, "A is not core-free");
    rep.require(c.corefree_b, "B is not core-free");
    rep.require(c.meet_tag.is_cyclic_or_dihedral(), "A∩B is not cyclic or dihedral");
    rep.expect("meet", row.expect.meet.as_ref(), &c.meet_tag);
    rep.factorisation = Some(c);
    Ok(())
}

fn verify_embed(row: &CatalogRow, res: &mut Resolver, limits: &Limits, rep: &mut RowReport) -> Result<()> {
    let e = &row.expect;
    let (x, xa, g) = resolve_xab(row, res)?;
    let run = verify_hypothesis(&x, &xa, &g, &HypothesisOptions::default(), limits)?;
    rep.see("|X|", x.order());
    rep.see("|Xa|", xa.order());
    rep.see("|G|", g.order());
    rep.see("ga", &run.ga_tag);
    rep.factorisation = Some(FactorisationCertificate {
        x_order: x.order().clone(),
        a_order: xa.order().clone(),
        b_order: g.order().clone(),
        meet_order: run.ga.order().clone(),
        meet_tag: run.ga_tag.clone(),
        corefree_a: run.space.faithful,
        corefree_b: is_core_free(&x, &g, limits)?,
    });
    rep.require(run.product_ok, "X != G X_a");
    // G may contain the socle (PGL_2(4) = A_5 in S_5); that is reported, not rejected.
    rep.see("G core-free", rep.factorisation.as_ref().is_some_and(|f| f.corefree_b));
    rep.expect("ga", e.meet.as_ref(), &run.ga_tag);
    let valencies: Vec<String> = run.certificates.iter().map(|c| c.valency.to_string()).collect();
    rep.see("witness valencies", if valencies.is_empty() { "none".into() } else { valencies.join(",") });
    let cert = run
        .certificates
        .iter()
        .find(|c| e.valency.is_none_or(|v| v == c.valency) && e.xab.as_ref().is_none_or(|v| *v == c.xab_order));
    let Some(cert) = cert else {
        rep.mismatches.push("no involution of G satisfies the embedding hypothesis with the expected valency".into());
        return Ok(());
    };
    rep.see("valency", cert.valency);
    rep.see("vertices", cert.vertices);
    rep.see("|Xab|", &cert.xab_order);
    rep.see("|Gab|", cert.gab_order);
    rep.see("regularity", cert.regularity);
    rep.expect("vertices", e.vertices.as_ref(), &cert.vertices);
    rep.expect("|G_ab|", e.gab.as_ref(), &cert.gab_order);
    rep.expect("regularity", e.regularity.as_ref(), &cert.regularity);
    let ctx = CertificateContext {
        x_gens: x.generators(),
        xa_gens: xa.generators(),
        g_gens: g.generators(),
    };
    let failed = validate_certificate(&ctx, cert, VALIDATOR_CAP);
    for f in &failed {
        rep.mismatches.push(format!("validator: {f}"));
    }
    rep.validation = Some(failed);
    rep.certificate = Some(cert.clone());
    rep.groups = Some(CertificateGroups { x, xa, g });

    if cert.vertices > GRAPH_GATE.min(limits.graph_vertices) {
        rep.see("graph", "certificate-only");
        if e.bipartite.is_some() || e.connected.is_some() {
            rep.mismatches
                .push("bipartite/connected expectations need the graph, which is over the graph gate".into());
        }
        return Ok(());
    }
    let graph = orbital_graph(&run.space, cert.beta, limits)?;
    let inv = if graph.n() as u64 <= limits.canonical { invariants(&graph) } else { invariants_transitive(&graph) };
    rep.require(inv.valency() == Some(cert.valency as usize), "orbital graph valency differs from the certificate");
    rep.expect("bipartite", e.bipartite.as_ref(), &inv.bipartite.is_some());
    rep.expect("connected", e.connected.as_ref(), &inv.connected);
    rep.see("bipartite", inv.bipartite.is_some());
    rep.see("connected", inv.connected);
    rep.see("girth", inv.girth_text());
    let mut refs = Vec::new();
    if let Some(name) = &e.graph {
        if let Some(graph) = reference_graph(name)? {
            refs.push(Reference { name: name.clone(), graph });
        }
    }
    let id = identify_with(&graph, &inv, &refs, limits)?;
    match (&id.name, id.confirmation) {
        (Some(n), Some(c)) => {
            rep.see("graph", format_args!("{n} [{c}]"));
            rep.identified = Some((n.clone(), c));
        }
        _ => rep.see("graph", "unrecognized"),
    }
    if let Some(name) = &e.graph {
        if id.name.as_ref() != Some(name) {
            rep.mismatches.push(format!("graph: expected {name}, got {}", id.name.as_deref().unwrap_or("unrecognized")));
        }
    }
    rep.graph = Some(graph);
    Ok(())
}

fn verify_homog(row: &CatalogRow, res: &mut Resolver, limits: &Limits, rep: &mut RowReport) -> Result<()> {
    let e = &row.expect;
    let x = res.resolve(&row.x)?;
    res.bind("X", x.clone());
    let b = res.resolve(&row.b)?;
    let n = b.degree();
    let k = e.k.unwrap_or(2);
    rep.see("degree", n);
    rep.see("|B|", b.order());
    rep.require(b.is_subgroup_of(&x), "B is not inside X");
    let homog = k_homogeneous(&b, k, limits)?;
    rep.see("homogeneous", homog);
    rep.require(homog, format!("B is not {k}-homogeneous"));
    let pts: Vec<usize> = (0..k.min(n)).collect();
    let xy = classify_cyclic_dihedral(&b.pointwise_stabilizer(&pts), limits)?;
    let pair = classify_cyclic_dihedral(&arcmaps_core::ops::setwise_stabilizer(&b, &pts, limits)?, limits)?;
    rep.see("xy", &xy);
    rep.see("pair", &pair);
    rep.expect("B_xy", e.xy.as_ref(), &xy);
    rep.expect("B_{x,y}", e.pair.as_ref(), &pair);
    let even = b.generators().iter().all(|p| p.sign() == 1);
    rep.see("even", even);
    match (e.odd, &e.odd_extra) {
        (Some(true), _) if !even => {}
        (Some(true), Some(words)) => {
            // W ∩ A_n = B exactly when B is even and |W : B| = 2.
            let w = b.generated_with(&parse_words(words, n)?)?;
            rep.see("|W|", w.order());
            rep.require(w.generators().iter().any(|p| p.sign() == -1), "witness W has no odd element");
            rep.require(
                even && w.order() == &(b.order() * 2u32) && w.generators().iter().all(|p| b.is_normalized_by(p)),
                format!("W = <B, odd_extra> has order {}, so W ∩ A_n is not B", w.order()),
            );
        }
        (Some(true), None) => rep.mismatches.push("B is even and no odd witness is given".into()),
        (Some(false), _) => rep.require(even, "B has an odd element"),
        (None, _) => {}
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub table: Option<String>,
    pub row: Option<String>,
    pub tier: Option<Tier>,
}

impl Filter {
    pub fn admits(&self, r: &CatalogRow) -> bool {
        self.table.as_ref().is_none_or(|t| *t == r.table)
            && self.row.as_ref().is_none_or(|id| *id == r.id)
            && match self.tier {
                Some(t) => t == r.tier,
                None => r.tier == Tier::Default,
            }
    }
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub reports: Vec<RowReport>,
    pub pass: usize,
    pub fail: usize,
    pub gated: usize,
}

impl Summary {
    /// 0 when nothing failed; 3 for gated rows under `strict_gates`.
    pub fn exit_code(&self, strict_gates: bool) -> i32 {
        if self.fail > 0 {
            1
        } else if strict_gates && self.gated > 0 {
            3
        } else {
            0
        }
    }
}

/// Verifies rows on `jobs` worker threads; reports keep the input order.
pub fn run_rows(rows: &[CatalogRow], ctx: &SuiteContext, jobs: usize) -> Summary {
    let slots: Vec<Mutex<Option<RowReport>>> = rows.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, rows.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= rows.len() {
                    break;
                }
                let r = verify_row(&rows[i], ctx);
                *slots[i].lock().expect("poisoned") = Some(r);
            });
        }
    });
    let reports: Vec<RowReport> = slots.into_iter().map(|m| m.into_inner().expect("poisoned").expect("ran")).collect();
    let count = |o| reports.iter().filter(|r| r.outcome == o).count();
    Summary {
        pass: count(Outcome::Pass),
        fail: count(Outcome::Fail),
        gated: count(Outcome::Gated),
        reports,
    }
}

pub fn run_suite(filter: &Filter, ctx: &SuiteContext, jobs: usize) -> Result<Summary> {
    let rows: Vec<CatalogRow> = load_catalog()?.into_iter().filter(|r| filter.admits(r)).collect();
    Ok(run_rows(&rows, ctx, jobs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

pub fn format_report(r: &RowReport, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            let _ = write!(s, "{} table={} row={}", r.outcome, r.table, r.id);
            for (k, v) in &r.observed {
                if v.contains(' ') {
                    let _ = write!(s, " {k}=\"{v}\"");
                } else {
                    let _ = write!(s, " {k}={v}");
                }
            }
            s.push('\n');
            for m in &r.mismatches {
                let _ = writeln!(s, "  {m}");
            }
        }
        Format::Structured => {
            let _ = writeln!(s, "table={}\nrow={}\ntier={}\noutcome={}", r.table, r.id, r.tier, r.outcome);
            for (k, v) in &r.observed {
                let _ = writeln!(s, "{}={v}", k.replace(' ', "_"));
            }
            for m in &r.mismatches {
                let _ = writeln!(s, "mismatch={m}");
            }
            s.push('\n');
        }
    }
    s
}

pub fn format_summary(sum: &Summary, format: Format) -> String {
    let mut s: String = sum.reports.iter().map(|r| format_report(r, format)).collect();
    match format {
        Format::Text => {
            let _ = writeln!(s, "rows={} pass={} fail={} gated={}", sum.reports.len(), sum.pass, sum.fail, sum.gated);
        }
        Format::Structured => {
            let _ = writeln!(s, "summary=rows\nrows={}\npass={}\nfail={}\ngated={}", sum.reports.len(), sum.pass, sum.fail, sum.gated);
        }
    }
    s
}
