use std::path::PathBuf;
use std::process::ExitCode;

use arcmaps_catalog::constructions::{k1_verify, pi_sieve, PI_SIEVE_MAX};
use arcmaps_catalog::registry::o53;
use arcmaps_catalog::rows::{
    format_report, format_summary, load_catalog, reference_graph, run_rows, verify_row, CatalogRow, Expected, Format,
    Kind, Outcome, SuiteContext, Tier,
};
use arcmaps_catalog::Resolver;
use arcmaps_core::factor::{exhaustive_search, factorisation_signature};
use arcmaps_core::structure::classify_cyclic_dihedral;
use arcmaps_core::{set_default_seed, Error, Limits};
use arcmaps_graph::{identify_with, invariants, Graph, Reference};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "arcmaps", version, about = "Cyclic/dihedral factorisations and arc-transitive map embeddings")]
struct Cli {
    /// Seed for the randomized stabilizer-chain construction.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group order enumerated element by element.
    #[arg(long, global = true)]
    max_order: Option<u64>,
    /// Largest coset space built explicitly.
    #[arg(long, global = true)]
    max_index: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Directory holding optional subgroup word files.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Worker threads for suite runs; defaults to the available cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Exit with status 3 when anything was gated.
    #[arg(long, global = true)]
    strict_gates: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Default,
    Optional,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Order, degree and orbits of a group spec.
    Group { spec: String },
    /// Checks X = AB with cyclic or dihedral A ∩ B; `A` may name X, `B` may name X and A.
    Factor { x: String, a: String, b: String },
    /// Runs the embedding hypothesis for X, X_α and G.
    Embed { x: String, xa: String, g: String },
    /// All cyclic/dihedral core-free factorisations of X up to conjugacy.
    Search { x: String },
    /// Verifies one catalog row.
    Row { table: String, id: String },
    /// Verifies catalog rows.
    Suite {
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        row: Option<String>,
        #[arg(long, value_enum, default_value_t = TierArg::Default)]
        tier: TierArg,
        /// Skips rows whose id carries a degree `-n<k>` above this.
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// The coset construction on [A_p : C_p].
    K1 {
        #[arg(long)]
        p: u64,
        /// Computes |<H, g>| even for large degree.
        #[arg(long)]
        full_span: bool,
    },
    /// Primes up to the limit admitted by the sieve.
    Pi {
        #[arg(long)]
        limit: u64,
    },
    /// The orthogonal-group suite on the singular vectors of F_3^5.
    Ortho,
    /// Identifies a graph given in exchange format.
    GraphId { file: PathBuf },
}

/// An ordered key/value record, printed on one line or one field per line.
struct Record {
    status: Option<&'static str>,
    fields: Vec<(String, String)>,
}

impl Record {
    fn new(status: Option<&'static str>) -> Record {
        Record { status, fields: Vec::new() }
    }

    fn put(&mut self, k: &str, v: impl std::fmt::Display) -> &mut Record {
        self.fields.push((k.to_string(), v.to_string()));
        self
    }

    fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Text => {
                let mut parts: Vec<String> = self.status.iter().map(|s| s.to_string()).collect();
                for (k, v) in &self.fields {
                    if v.contains(' ') {
                        parts.push(format!("{k}=\"{v}\""));
                    } else {
                        parts.push(format!("{k}={v}"));
                    }
                }
                s.push_str(&parts.join(" "));
                s.push('\n');
            }
            Format::Structured => {
                if let Some(st) = self.status {
                    s.push_str(&format!("outcome={st}\n"));
                }
                for (k, v) in &self.fields {
                    s.push_str(&format!("{}={v}\n", k.replace(' ', "_")));
                }
                s.push('\n');
            }
        }
        s
    }
}

struct Env {
    format: Format,
    ctx: SuiteContext,
    jobs: usize,
    strict_gates: bool,
}

impl Env {
    fn resolver(&self) -> Resolver {
        let mut r = Resolver::new(self.ctx.limits.clone());
        r.data_dir = self.ctx.data_dir.clone();
        r
    }

    /// Resolves `x`, then `a` with `X` bound, then `b` with `A` bound too, so
    /// malformed specs surface as input errors before verification.
    fn check_specs(&self, x: &str, a: &str, b: &str) -> Result<(), Error> {
        let mut res = self.resolver();
        let xg = res.resolve(x)?;
        res.bind("X", xg);
        let ag = res.resolve(a)?;
        res.bind("A", ag);
        res.resolve(b)?;
        Ok(())
    }

    fn print(&self, r: &Record) {
        print!("{}", r.render(self.format));
    }

    fn outcome_code(&self, o: Outcome) -> u8 {
        match o {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Gated if self.strict_gates => 3,
            Outcome::Gated => 0,
        }
    }
}

/// Errors that abort a command before anything was verified.
fn error_code(e: &Error, strict_gates: bool) -> u8 {
    match e {
        Error::GateExceeded { .. } | Error::LimitExceeded(_) if strict_gates => 3,
        Error::GateExceeded { .. } | Error::LimitExceeded(_) => 0,
        _ => 2,
    }
}

fn adhoc_row(kind: Kind, x: &str, a: &str, b: &str) -> CatalogRow {
    CatalogRow {
        table: "adhoc".into(),
        id: "-".into(),
        kind,
        tier: Tier::Default,
        x: x.into(),
        a: a.into(),
        b: b.into(),
        expect: Expected::default(),
        note: None,
        file: "<command line>".into(),
        line: 0,
    }
}

/// Catalog reference graphs and their orders, so only plausible ones are built.
const REFERENCE_SIZES: [(&str, usize); 6] = [
    ("Heawood", 14),
    ("biplane incidence", 22),
    ("antiflag PG_3(2)", 30),
    ("Gamma", 80),
    ("PG_2(8) incidence", 146),
    ("Gamma-hat", 160),
];

fn row_degree(id: &str) -> Option<u64> {
    id.rsplit_once("-n").and_then(|(_, n)| n.parse().ok())
}

fn run(cli: Cli) -> Result<u8, Error> {
    set_default_seed(cli.seed);
    let mut limits = Limits::default();
    if let Some(m) = cli.max_order {
        limits.enumeration = m;
    }
    if let Some(m) = cli.max_index {
        limits.coset_index = m;
    }
    let env = Env {
        format: match cli.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Structured => Format::Structured,
        },
        ctx: SuiteContext { limits, data_dir: cli.data.clone() },
        jobs: cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        strict_gates: cli.strict_gates,
    };
    let lim = &env.ctx.limits;
    match cli.command {
        Command::Group { spec } => {
            let g = env.resolver().resolve(&spec)?;
            let mut r = Record::new(None);
            r.put("spec", &spec)
                .put("degree", g.degree())
                .put("order", g.order())
                .put("generators", g.generators().len())
                .put("transitive", g.is_transitive())
                .put("orbits", g.orbits().len());
            if g.order_u64().is_some_and(|n| n <= lim.enumeration) {
                r.put("cyclic_dihedral", classify_cyclic_dihedral(&g, lim)?);
            }
            env.print(&r);
            Ok(0)
        }
        Command::Factor { x, a, b } => {
            env.check_specs(&x, &a, &b)?;
            let rep = verify_row(&adhoc_row(Kind::Factor, &x, &a, &b), &env.ctx);
            print!("{}", format_report(&rep, env.format));
            Ok(env.outcome_code(rep.outcome))
        }
        Command::Embed { x, xa, g } => {
            env.check_specs(&x, &xa, &g)?;
            let rep = verify_row(&adhoc_row(Kind::Embed, &x, &xa, &g), &env.ctx);
            print!("{}", format_report(&rep, env.format));
            Ok(env.outcome_code(rep.outcome))
        }
        Command::Search { x } => {
            let g = env.resolver().resolve(&x)?;
            let res = exhaustive_search(&g, lim)?;
            for h in &res.hits {
                let (a, b, m, tag) = factorisation_signature(&h.certificate);
                let val = |v: &[arcmaps_core::factor::EmbeddingCertificate]| {
                    if v.is_empty() {
                        "-".to_string()
                    } else {
                        v.iter().map(|c| format!("{}:{}", c.valency, c.regularity)).collect::<Vec<_>>().join(",")
                    }
                };
                let mut r = Record::new(Some("HIT"));
                r.put("|A|", a)
                    .put("|B|", b)
                    .put("|A∩B|", m)
                    .put("meet", tag)
                    .put("A_class", h.a_class)
                    .put("B_class", h.b_class)
                    .put("embed_AB", val(&h.embeddings_ab))
                    .put("embed_BA", val(&h.embeddings_ba));
                env.print(&r);
            }
            let mut r = Record::new(None);
            r.put("group", &x).put("order", g.order()).put("classes", res.classes.classes.len()).put("hits", res.hits.len());
            env.print(&r);
            Ok(0)
        }
        Command::Row { table, id } => {
            let rows = load_catalog()?;
            let Some(row) = rows.iter().find(|r| r.table == table && r.id == id) else {
                eprintln!("no row {id} in table {table}");
                return Ok(2);
            };
            let rep = verify_row(row, &env.ctx);
            print!("{}", format_report(&rep, env.format));
            Ok(env.outcome_code(rep.outcome))
        }
        Command::Suite { table, row, tier, max_n } => {
            let rows: Vec<CatalogRow> = load_catalog()?
                .into_iter()
                .filter(|r| table.as_ref().is_none_or(|t| *t == r.table))
                .filter(|r| row.as_ref().is_none_or(|id| *id == r.id))
                .filter(|r| match tier {
                    TierArg::Default => r.tier == Tier::Default,
                    TierArg::Optional => r.tier == Tier::Optional,
                    TierArg::All => true,
                })
                .filter(|r| max_n.is_none_or(|m| row_degree(&r.id).is_none_or(|n| n <= m)))
                .collect();
            if rows.is_empty() {
                eprintln!("no catalog rows match the filter");
                return Ok(2);
            }
            let sum = run_rows(&rows, &env.ctx, env.jobs);
            print!("{}", format_summary(&sum, env.format));
            Ok(sum.exit_code(env.strict_gates) as u8)
        }
        Command::K1 { p, full_span } => {
            let rep = k1_verify(p, full_span, lim)?;
            let ok = rep.claim1() && rep.claim2();
            let mut r = Record::new(Some(if ok { "PASS" } else { "FAIL" }));
            r.put("p", rep.p)
                .put("degree", &rep.degree)
                .put("involution", rep.involution)
                .put("fixed", rep.fixed)
                .put("fixed_expected", &rep.fixed_expected)
                .put("sign", rep.sign)
                .put("sign_expected", rep.sign_expected)
                .put("normalizes_K", rep.normalizes_k)
                .put("moves_H", rep.moves_h)
                .put("claim1", rep.claim1())
                .put("claim2", rep.claim2());
            match &rep.span {
                Some((order, alt)) => r.put("span", order).put("span_alternating", alt),
                None => r.put("span", "skipped"),
            };
            env.print(&r);
            Ok(if ok { 0 } else { 1 })
        }
        Command::Pi { limit } => {
            if limit > PI_SIEVE_MAX {
                eprintln!("limit above {PI_SIEVE_MAX}");
                return Ok(if env.strict_gates { 3 } else { 2 });
            }
            let rep = pi_sieve(limit)?;
            let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            for (p, why) in &rep.excluded {
                let mut r = Record::new(Some("EXCLUDED"));
                r.put("p", p).put("reason", why);
                env.print(&r);
            }
            let mut r = Record::new(None);
            r.put("limit", rep.limit).put("count", rep.primes.len()).put("primes", list(&rep.primes));
            env.print(&r);
            Ok(0)
        }
        Command::Ortho => {
            let checks = o53()?.verify(lim)?;
            let mut code = 0;
            for c in &checks {
                let mut r = Record::new(Some(if c.passed { "PASS" } else { "FAIL" }));
                r.put("check", c.name).put("detail", &c.detail);
                env.print(&r);
                if !c.passed {
                    code = 1;
                }
            }
            Ok(code)
        }
        Command::GraphId { file } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return Ok(2);
                }
            };
            let g = Graph::from_exchange(&text)?;
            let mut refs = Vec::new();
            for (name, n) in REFERENCE_SIZES {
                if n == g.n() {
                    let graph = reference_graph(name)?.expect("known reference");
                    refs.push(Reference { name: name.to_string(), graph });
                }
            }
            let id = identify_with(&g, &invariants(&g), &refs, lim)?;
            let mut r = Record::new(None);
            r.put("file", file.display()).put("identified", &id);
            env.print(&r);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strict = cli.strict_gates;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = error_code(&e, strict);
            if code == 0 {
                println!("GATED {e}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
