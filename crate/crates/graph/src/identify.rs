use std::fmt;

use arcmaps_core::{Limits, Result};

use crate::{construct_named, invariants, iso, Family, Graph, GraphInvariants};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confirmation {
    /// Invariants match; the graph was too large to confirm by isomorphism.
    ParamsOnly,
    IsoConfirmed,
}

impl fmt::Display for Confirmation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Confirmation::ParamsOnly => write!(f, "ParamsOnly"),
            Confirmation::IsoConfirmed => write!(f, "IsoConfirmed"),
        }
    }
}

/// A named graph outside the parametrized families, e.g. an incidence graph.
#[derive(Clone, Debug)]
pub struct Reference {
    pub name: String,
    pub graph: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub name: Option<String>,
    pub confirmation: Option<Confirmation>,
    pub invariants: GraphInvariants,
}

impl Identification {
    pub fn is(&self, name: &str, level: Confirmation) -> bool {
        self.name.as_deref() == Some(name) && self.confirmation == Some(level)
    }
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = &self.invariants;
        match (&self.name, self.confirmation) {
            (Some(n), Some(c)) => write!(f, "{n} [{c}]"),
            _ => {
                write!(f, "unrecognized(n={}", inv.n)?;
                if let Some(k) = inv.valency() {
                    write!(f, ",valency={k}")?;
                }
                if inv.bipartite.is_some() {
                    write!(f, ",bipartite")?;
                }
                if inv.connected {
                    write!(f, ",connected")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn family_candidates(inv: &GraphInvariants) -> Vec<Family> {
    let n = inv.n;
    let Some(k) = inv.valency() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if n >= 1 && k == n - 1 {
        out.push(Family::Complete(n));
    }
    if n % 2 == 0 && n >= 2 && inv.bipartite == Some((n / 2, n / 2)) {
        if k == n / 2 {
            out.push(Family::CompleteBipartite(n / 2));
        }
        if k + 1 == n / 2 && n >= 6 {
            out.push(Family::CompleteBipartiteMinusMatching(n / 2));
        }
    }
    let m = (1..=2 * n + 2).find(|&m| m * (m - 1) / 2 >= n).unwrap_or(0);
    if m >= 4 && m * (m - 1) / 2 == n && inv.srg == Some((n, 2 * (m - 2), m - 2, 4)) {
        out.push(Family::Johnson(m));
    }
    out
}

fn same_params(a: &GraphInvariants, b: &GraphInvariants) -> bool {
    a.n == b.n
        && a.edges == b.edges
        && a.degrees == b.degrees
        && a.connected == b.connected
        && a.bipartite.is_some() == b.bipartite.is_some()
        && a.girth == b.girth
        && a.srg == b.srg
}

/// Recognition against the named families only.
pub fn identify(g: &Graph, limits: &Limits) -> Result<Identification> {
    identify_with(g, &invariants(g), &[], limits)
}

/// Parameter match first, then an isomorphism check when `g` is within the
/// canonical-form gate. `inv` must be the invariants of `g`.
pub fn identify_with(g: &Graph, inv: &GraphInvariants, refs: &[Reference], limits: &Limits) -> Result<Identification> {
    let confirm = g.n() as u64 <= limits.canonical;
    let mut candidates: Vec<(String, Graph)> = Vec::new();
    for f in family_candidates(inv) {
        candidates.push((f.to_string(), construct_named(f)?));
    }
    for r in refs {
        if r.graph.n() == inv.n && same_params(&invariants(&r.graph), inv) {
            candidates.push((r.name.clone(), r.graph.clone()));
        }
    }
    for (name, reference) in candidates {
        if !confirm {
            return Ok(Identification {
                name: Some(name),
                confirmation: Some(Confirmation::ParamsOnly),
                invariants: inv.clone(),
            });
        }
        if iso(g, &reference, limits)? {
            return Ok(Identification {
                name: Some(name),
                confirmation: Some(Confirmation::IsoConfirmed),
                invariants: inv.clone(),
            });
        }
    }
    Ok(Identification {
        name: None,
        confirmation: None,
        invariants: inv.clone(),
    })
}
