//! Acceptance criteria 1-10, one line each.
//!
//! Every criterion is evaluated, printed as `criterion N: PASS|FAIL ...`, and
//! then compared with its pinned outcome. Criteria that fail for reasons
//! recorded in the decisions ledger are pinned as FAIL so a regression in
//! either direction is noticed.

use std::collections::{BTreeMap, BTreeSet};
use std::thread;
use std::time::{Duration, Instant};

use arcmaps_catalog::constructions::{k1_verify, pi_sieve, remark_examples, RemarkCase};
use arcmaps_catalog::named_group;
use arcmaps_catalog::registry::o53;
use arcmaps_catalog::rows::{
    format_report, load_catalog, parse_tag, run_rows, CatalogRow, Format, Kind, Outcome, RowReport, Summary,
    SuiteContext, VALIDATOR_CAP,
};
use arcmaps_core::factor::{exhaustive_search, factorisation_signature, Regularity, SearchResult};
use arcmaps_core::validate::{validate_certificate, CertificateContext};
use arcmaps_core::{Error, Limits, Perm, PermGroup};
use arcmaps_graph::{canonical_form, iso, Confirmation, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PINNED: [(u32, bool); 10] = [
    (1, false),
    (2, true),
    (3, true),
    (4, false),
    (5, true),
    (6, true),
    (7, true),
    (8, true),
    (9, true),
    (10, false),
];

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn from(failures: Vec<String>, elapsed: Duration, budget: Duration) -> Verdict {
        let mut failures = failures;
        if elapsed > budget {
            failures.push(format!("took {:.1}s, budget {}s", elapsed.as_secs_f64(), budget.as_secs()));
        }
        let time = format!("{:.1}s", elapsed.as_secs_f64());
        if failures.is_empty() {
            Verdict { pass: true, detail: time }
        } else {
            Verdict { pass: false, detail: format!("{time}; {}", failures.join("; ")) }
        }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn table_rows(table: &str, optional_too: bool) -> Vec<CatalogRow> {
    load_catalog()
        .unwrap()
        .into_iter()
        .filter(|r| r.table == table && (optional_too || r.tier == arcmaps_catalog::rows::Tier::Default))
        .collect()
}

struct Timed<T> {
    value: T,
    elapsed: Duration,
}

fn timed<T>(f: impl FnOnce() -> T) -> Timed<T> {
    let t = Instant::now();
    let value = f();
    Timed { value, elapsed: t.elapsed() }
}

fn run_table(table: &str, optional_too: bool) -> Timed<Summary> {
    let rows = table_rows(table, optional_too);
    timed(|| run_rows(&rows, &SuiteContext::default(), 4))
}

fn row_failures(sum: &Summary) -> Vec<String> {
    sum.reports
        .iter()
        .filter(|r| r.outcome != Outcome::Pass)
        .map(|r| format!("{} row {} {}: {}", r.table, r.id, r.outcome, r.mismatches.join(", ")))
        .collect()
}

fn report<'a>(sum: &'a Summary, id: &str) -> &'a RowReport {
    sum.reports.iter().find(|r| r.id == id).unwrap_or_else(|| panic!("row {id} missing"))
}

fn criterion_1(s: &Timed<Summary>) -> Verdict {
    let sum = &s.value;
    let mut f = row_failures(sum);
    if sum.reports.len() != 6 {
        f.push(format!("{} rows instead of 6", sum.reports.len()));
    }
    let thirty: Vec<&Graph> = ["4", "5"].iter().filter_map(|id| report(sum, id).graph.as_ref()).collect();
    match thirty.as_slice() {
        [a, b] if a.n() == 30 && b.n() == 30 => {
            if !iso(a, b, &Limits::default()).unwrap_or(false) {
                f.push("the two 30-vertex graphs are not isomorphic".into());
            }
        }
        _ => f.push("rows 4-5 did not both produce a 30-vertex graph".into()),
    }
    let last = report(sum, "6");
    match &last.certificate {
        Some(c) if c.vertices == 60480 && c.valency == 12 => {}
        Some(c) => f.push(format!("row 6 certificate has {} vertices, valency {}", c.vertices, c.valency)),
        None => f.push("row 6 has no certificate".into()),
    }
    if last.get("bipartite") != Some("true") || last.get("connected") != Some("true") {
        f.push("row 6 graph not observed bipartite and connected".into());
    }
    Verdict::from(f, s.elapsed, secs(300))
}

fn criterion_2(s: &Timed<Summary>) -> Verdict {
    let sum = &s.value;
    let mut f = row_failures(sum);
    let want: BTreeSet<&str> = [
        "line1-n5", "line1-n7", "line1-n8", "line1-n9", "line2-n8", "line3-n5", "line3-n6", "line3-n8", "line3-n9",
        "line3-n10",
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<&str> = sum.reports.iter().map(|r| r.id.as_str()).collect();
    if want != got {
        f.push(format!("row set {got:?}"));
    }
    for r in &sum.reports {
        let (line, n) = r.id.split_once("-n").expect("line<k>-n<n>");
        let n: u64 = n.parse().unwrap();
        let (graph, ga) = match line {
            "line3" => (format!("J({n},2)"), 2 * (n - 2)),
            _ => (format!("K_{n}"), n - 1),
        };
        match &r.identified {
            Some((name, Confirmation::IsoConfirmed)) if *name == graph => {}
            other => f.push(format!("{}: identified {other:?}, expected {graph}", r.id)),
        }
        match &r.certificate {
            Some(c) if c.ga_order == ga && c.gab_order == 1 => {}
            Some(c) => f.push(format!("{}: |G_a| = {}, |G_ab| = {}", r.id, c.ga_order, c.gab_order)),
            None => f.push(format!("{}: no certificate", r.id)),
        }
    }
    Verdict::from(f, s.elapsed, secs(120))
}

fn criterion_3(s: &Timed<Summary>) -> Verdict {
    let sum = &s.value;
    let mut f = row_failures(sum);
    let expect = [
        ("1", "Heawood", 14, 3),
        ("2", "PG_2(8) incidence", 146, 9),
        ("3", "biplane incidence", 22, 5),
        ("4", "Gamma", 80, 24),
        ("5", "Gamma-hat", 160, 12),
    ];
    for (id, name, n, k) in expect {
        let r = report(sum, id);
        match (&r.identified, &r.graph) {
            (Some((got, _)), Some(g)) if got == name && g.n() == n && g.degree(0) == k => {}
            (id_, g) => f.push(format!(
                "row {id}: identified {id_:?}, graph {:?}",
                g.as_ref().map(|g| (g.n(), g.degree(0)))
            )),
        }
    }
    Verdict::from(f, s.elapsed, secs(600))
}

fn criterion_4(suites: &[&Summary]) -> Verdict {
    let mut flag = BTreeSet::new();
    let mut f = Vec::new();
    for sum in suites {
        for r in sum.reports.iter().filter(|r| r.outcome == Outcome::Pass) {
            if let Some(c) = &r.certificate {
                if c.regularity == Regularity::FlagRegular {
                    flag.insert(format!("{} {}", r.table, r.id));
                }
            }
        }
    }
    let want: BTreeSet<String> = ["1", "2", "3"].iter().map(|id| format!("6711tbl {id}")).collect();
    if flag != want {
        f.push(format!("FlagRegular rows {flag:?}, expected {want:?}"));
    }
    Verdict::from(f, Duration::ZERO, secs(1))
}

const SEARCH_GROUPS: [&str; 4] = ["PSL 2 7", "PSL 2 11", "S 6", "M 11"];

type Signature = (u64, u64, u64, String);

/// `S_5` fixing a point against each transitive `B ≤ S_6` whose point
/// stabilizer is cyclic or dihedral: `B` of order `6m` meets it in `B_x`.
const S6_POINT_STABILIZER: [(u64, u64, u64, &str); 9] = [
    (120, 6, 1, "1"),
    (120, 12, 2, "C2"),
    (120, 18, 3, "C3"),
    (120, 24, 4, "C4"),
    (120, 24, 4, "D4"),
    (120, 36, 6, "D6"),
    (120, 48, 8, "D8"),
    (120, 60, 10, "D10"),
    (120, 72, 12, "D12"),
];

fn sig_string(a: u64, b: u64, m: u64, tag: &str) -> Signature {
    (a, b, m, parse_tag(tag).expect("tag").to_string())
}

fn to_u64(n: &num_bigint::BigUint) -> u64 {
    n.to_string().parse().unwrap()
}

/// Expected signatures from the factor rows of the catalog with this `x`.
fn catalog_signatures(spec: &str) -> BTreeSet<Signature> {
    let rows: Vec<CatalogRow> =
        load_catalog().unwrap().into_iter().filter(|r| r.kind == Kind::Factor && r.x == spec).collect();
    let sum = run_rows(&rows, &SuiteContext::default(), 1);
    let mut out = BTreeSet::new();
    for r in &sum.reports {
        assert_eq!(r.outcome, Outcome::Pass, "{} {}: {:?}", r.table, r.id, r.mismatches);
        let (a, b, m, t) = factorisation_signature(r.factorisation.as_ref().unwrap());
        out.insert((to_u64(&a), to_u64(&b), to_u64(&m), t.to_string()));
    }
    if spec == "S 6" {
        out.extend(S6_POINT_STABILIZER.iter().map(|&(a, b, m, t)| sig_string(a, b, m, t)));
    }
    out
}

fn search_signatures(res: &SearchResult) -> BTreeSet<Signature> {
    res.hits
        .iter()
        .map(|h| {
            let (a, b, m, t) = factorisation_signature(&h.certificate);
            (to_u64(&a), to_u64(&b), to_u64(&m), t.to_string())
        })
        .collect()
}

fn criterion_5(searches: &[(String, Timed<SearchResult>)]) -> Verdict {
    let mut f = Vec::new();
    let mut total = Duration::ZERO;
    for (spec, s) in searches {
        total += s.elapsed;
        let got = search_signatures(&s.value);
        let want = catalog_signatures(spec);
        if got != want {
            let extra: Vec<_> = got.difference(&want).collect();
            let missing: Vec<_> = want.difference(&got).collect();
            f.push(format!("{spec}: extra {extra:?}, missing {missing:?}"));
        }
        if s.value.hits.iter().any(|h| !h.certificate.is_valid()) {
            f.push(format!("{spec}: search emitted an invalid factorisation"));
        }
    }
    Verdict::from(f, total, secs(900))
}

fn criterion_6() -> Verdict {
    let t = Instant::now();
    let f = match o53().and_then(|s| s.verify(&Limits::default())) {
        Ok(checks) if checks.is_empty() => vec!["no checks ran".into()],
        Ok(checks) => checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect(),
        Err(e) => vec![e.to_string()],
    };
    Verdict::from(f, t.elapsed(), secs(120))
}

fn criterion_7() -> Verdict {
    let t = Instant::now();
    let lim = Limits::default();
    let mut f = Vec::new();
    let pi = pi_sieve(100).unwrap();
    if pi.primes != [19, 43, 47, 59, 67, 71, 79, 83] {
        f.push(format!("pi(100) = {:?}", pi.primes));
    }
    // Every other prime up to 100 is excluded with a reason.
    let primes: Vec<u64> = (2..=100u64).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
    let excluded: BTreeSet<u64> = pi.excluded.iter().map(|(p, _)| *p).collect();
    for p in primes {
        if pi.primes.contains(&p) == excluded.contains(&p) {
            f.push(format!("{p} is both or neither admitted and excluded"));
        }
    }
    for (p, fix) in [(5u64, 2u64), (7, 24)] {
        match k1_verify(p, false, &lim) {
            Ok(r) => {
                if !r.claim1() || r.fixed != fix {
                    f.push(format!("k1({p}) claim 1: fixed {} sign {} vs {}", r.fixed, r.sign, r.sign_expected));
                }
                if !r.claim2() {
                    f.push(format!("k1({p}) claim 2"));
                }
            }
            Err(e) => f.push(format!("k1({p}): {e}")),
        }
    }
    match k1_verify(19, false, &lim) {
        Err(Error::GateExceeded { .. }) => {}
        other => f.push(format!("k1(19) did not gate: {:?}", other.map(|r| r.degree))),
    }
    Verdict::from(f, t.elapsed(), secs(180))
}

/// Sign of `p` on unordered pairs, from its cycle type alone: a cycle of
/// length `l` contributes `floor((l-1)/2)` pair cycles of length `l` (plus one
/// of length `l/2` when `l` is even), and two cycles of lengths `l, m`
/// contribute `gcd(l, m)` cycles of length `lcm(l, m)`.
fn pair_sign_from_cycle_type(p: &Perm) -> i8 {
    let n = p.degree();
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
    for s in 0..n {
        let mut l = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p.apply(x);
            l += 1;
        }
        if l > 0 {
            lens.push(l as u64);
        }
    }
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut odd = 0u64;
    for (i, &l) in lens.iter().enumerate() {
        odd += (l - 1) / 2 * (l - 1);
        if l % 2 == 0 {
            odd += l / 2 - 1;
        }
        for &m in &lens[i + 1..] {
            let g = gcd(l, m);
            odd += g * (l / g * m - 1);
        }
    }
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

fn criterion_8() -> Verdict {
    let t = Instant::now();
    let mut f = Vec::new();
    for q in [5u64, 7, 9, 11, 13] {
        let g = named_group(&format!("PGL 2 {q}")).unwrap();
        for (i, s) in g.generators().iter().enumerate() {
            let lifted = s.lift_to_pairs().sign();
            if lifted != 1 || pair_sign_from_cycle_type(s) != 1 {
                f.push(format!("q={q} generator {i}: sign {lifted}"));
            }
        }
        // A multiplier fixes two points and cycles the rest.
        let h = g
            .elements(5000)
            .unwrap()
            .into_iter()
            .find(|p| p.order_u64() == q - 1 && (0..p.degree()).filter(|&x| p.apply(x) == x).count() == 2)
            .expect("multiplier");
        let mut lens: BTreeMap<usize, usize> = BTreeMap::new();
        for c in h.lift_to_pairs().cycles() {
            *lens.entry(c.len()).or_default() += 1;
        }
        let fixed = (q * (q + 1) / 2) as usize - lens.iter().map(|(l, c)| l * c).sum::<usize>();
        let want: BTreeMap<usize, usize> =
            [(1, 1), ((q as usize - 1) / 2, 1), (q as usize - 1, (q as usize + 1) / 2)].into_iter().collect();
        lens.insert(1, fixed);
        if lens != want {
            f.push(format!("q={q} multiplier on pairs {lens:?}"));
        }
    }
    Verdict::from(f, t.elapsed(), secs(30))
}

/// Registry groups small enough for closure enumeration.
const SMALL_GROUPS: [&str; 24] = [
    "S 4", "S 5", "S 6", "AGL1 8", "A 5", "A 6", "A 7", "C 12", "D 20", "PSL 2 5", "PSL 2 7", "PGL 2 7", "PSL 2 8",
    "PGL 2 9", "PGammaL 2 8", "PGammaL 2 9", "PSL 2 11", "PSL 2 13", "PGL 2 13", "PSL 2 16", "PSL 2 19",
    "AGammaL1 9", "ASL 2 5", "PSL 3 2",
];

fn closure_order(g: &PermGroup, cap: usize) -> usize {
    let id: Vec<u32> = (0..g.degree() as u32).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for s in g.generators() {
            let y: Vec<u32> = x.iter().map(|&i| s.images()[i as usize]).collect();
            if seen.insert(y.clone()) {
                assert!(seen.len() <= cap, "closure exceeds {cap}");
                queue.push(y);
            }
        }
    }
    seen.len()
}

fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(6..24);
    let p = rng.gen_range(0.15..0.6);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn shuffle(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut v: Vec<u32> = (0..g.n() as u32).collect();
    v.shuffle(rng);
    g.relabel(&Perm::from_images(v).unwrap())
}

fn validate_reports(suites: &[&Summary], f: &mut Vec<String>) -> usize {
    let mut count = 0;
    for sum in suites {
        for r in &sum.reports {
            let (Some(c), Some(g)) = (&r.certificate, &r.groups) else { continue };
            let ctx = CertificateContext {
                x_gens: g.x.generators(),
                xa_gens: g.xa.generators(),
                g_gens: g.g.generators(),
            };
            let bad = validate_certificate(&ctx, c, VALIDATOR_CAP);
            if !bad.is_empty() {
                f.push(format!("{} {}: {}", r.table, r.id, bad.join(", ")));
            }
            count += 1;
        }
    }
    count
}

fn validate_search(spec: &str, res: &SearchResult, f: &mut Vec<String>) -> usize {
    let x = &res.classes.ambient;
    let mut count = 0;
    for h in &res.hits {
        let a = &res.classes.classes[h.a_class].rep;
        for (stab, map, certs) in [(a, &h.b, &h.embeddings_ab), (&h.b, a, &h.embeddings_ba)] {
            for c in certs {
                let ctx = CertificateContext {
                    x_gens: x.generators(),
                    xa_gens: stab.generators(),
                    g_gens: map.generators(),
                };
                let bad = validate_certificate(&ctx, c, VALIDATOR_CAP);
                if !bad.is_empty() {
                    f.push(format!("{spec} search: {}", bad.join(", ")));
                }
                count += 1;
            }
        }
    }
    count
}

fn suite_text(sum: &Summary) -> String {
    sum.reports.iter().map(|r| format_report(r, Format::Structured)).collect::<Vec<_>>().join("\n")
}

fn criterion_9(suites: &[&Summary], searches: &[(String, Timed<SearchResult>)]) -> Verdict {
    let t = Instant::now();
    let lim = Limits::default();
    let mut f = Vec::new();

    for spec in SMALL_GROUPS {
        let g = named_group(spec).unwrap();
        let order = g.order_u64().unwrap();
        assert!(order <= 5000, "{spec} has order {order}");
        let closed = closure_order(&g, 5000) as u64;
        if closed != order {
            f.push(format!("{spec}: BSGS order {order}, closure {closed}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let groups: Vec<PermGroup> = SMALL_GROUPS.iter().map(|s| named_group(s).unwrap()).collect();
    for _ in 0..200 {
        let g = groups.choose(&mut rng).unwrap();
        let pt = rng.gen_range(0..g.degree());
        let orbit = g.orbit(pt).unwrap().len() as u64;
        let stab = g.stabilizer(pt).unwrap().order_u64().unwrap();
        if orbit * stab != g.order_u64().unwrap() {
            f.push(format!("orbit-stabilizer fails at point {pt} of a group of order {}", g.order()));
        }
    }

    let mut graphs: Vec<Graph> = Vec::new();
    for sum in suites {
        graphs.extend(sum.reports.iter().filter_map(|r| r.graph.clone()).filter(|g| g.n() <= 60));
    }
    graphs.truncate(20);
    while graphs.len() < 50 {
        graphs.push(random_graph(&mut rng));
    }
    for (i, g) in graphs.iter().enumerate() {
        let base = canonical_form(g, &lim).unwrap().bytes();
        for _ in 0..100 {
            if canonical_form(&shuffle(g, &mut rng), &lim).unwrap().bytes() != base {
                f.push(format!("graph {i} ({} vertices): canonical form depends on labels", g.n()));
                break;
            }
        }
    }

    let mut certs = validate_reports(suites, &mut f);
    for (spec, s) in searches {
        certs += validate_search(spec, &s.value, &mut f);
    }
    if certs == 0 {
        f.push("no certificates to validate".into());
    }

    for table in ["t:anmaps", "6711tbl"] {
        let rows = table_rows(table, false);
        let one = suite_text(&run_rows(&rows, &SuiteContext::default(), 1));
        let many = suite_text(&run_rows(&rows, &SuiteContext::default(), 4));
        if one != many {
            f.push(format!("{table}: output differs between runs"));
        }
    }
    let psl = named_group("PSL 2 11").unwrap();
    let runs: Vec<String> =
        (0..2).map(|_| format!("{:?}", search_signatures(&exhaustive_search(&psl, &lim).unwrap()))).collect();
    if runs[0] != runs[1] {
        f.push("search output differs between runs".into());
    }

    let mut v = Verdict::from(f, t.elapsed(), secs(600));
    v.detail = format!("{}; {certs} certificates re-validated", v.detail);
    v
}

fn criterion_10() -> Verdict {
    let t = Instant::now();
    let lim = Limits::default();
    let mut f = Vec::new();
    for n in [6, 7, 10, 11] {
        for case in [RemarkCase::A1i, RemarkCase::A1ii] {
            match remark_examples(n, case, &lim) {
                Ok(ex) if ex.failures.is_empty() => {}
                Ok(ex) => f.push(format!("n={n} {case:?} failed: {}", ex.failures.join(", "))),
                Err(e) => f.push(format!("n={n} {case:?}: {e}")),
            }
        }
    }
    for n in [5, 9, 13] {
        if !matches!(remark_examples(n, RemarkCase::A1ii, &lim), Err(Error::BadCase(_))) {
            f.push(format!("n={n} A1ii was not rejected"));
        }
    }
    Verdict::from(f, t.elapsed(), secs(60))
}

fn main() {
    let (anmaps, tbl, class, searches, c6, c7, c8, c10) = thread::scope(|s| {
        let anmaps = s.spawn(|| run_table("t:anmaps", false));
        let tbl = s.spawn(|| run_table("6711tbl", false));
        let class = s.spawn(|| run_table("class-maps", true));
        let searches: Vec<_> = SEARCH_GROUPS
            .iter()
            .map(|spec| {
                s.spawn(move || {
                    let x = named_group(spec).unwrap();
                    (spec.to_string(), timed(|| exhaustive_search(&x, &Limits::default()).unwrap()))
                })
            })
            .collect();
        let c6 = s.spawn(criterion_6);
        let c7 = s.spawn(criterion_7);
        let c8 = s.spawn(criterion_8);
        let c10 = s.spawn(criterion_10);
        (
            anmaps.join().unwrap(),
            tbl.join().unwrap(),
            class.join().unwrap(),
            searches.into_iter().map(|h| h.join().unwrap()).collect::<Vec<_>>(),
            c6.join().unwrap(),
            c7.join().unwrap(),
            c8.join().unwrap(),
            c10.join().unwrap(),
        )
    });
    let suites = [&tbl.value, &anmaps.value, &class.value];
    let verdicts = vec![
        criterion_1(&tbl),
        criterion_2(&anmaps),
        criterion_3(&class),
        criterion_4(&suites),
        criterion_5(&searches),
        c6,
        c7,
        c8,
        criterion_9(&suites, &searches),
        c10,
    ];
    let mut surprises = Vec::new();
    for ((n, pinned), v) in PINNED.iter().zip(&verdicts) {
        let word = match (v.pass, *pinned) {
            (true, _) => "PASS",
            (false, false) => "FAIL (pinned)",
            (false, true) => "FAIL",
        };
        println!("criterion {n}: {word} {}", v.detail);
        if v.pass != *pinned {
            surprises.push(*n);
        }
    }
    if !surprises.is_empty() {
        eprintln!("criteria {surprises:?} differ from their pinned outcome");
        std::process::exit(1);
    }
    println!("acceptance: all outcomes match their pins");
}
