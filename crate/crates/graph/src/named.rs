use std::fmt;

use arcmaps_core::perm::k_subsets;
use arcmaps_core::{Error, Result};

use crate::Graph;

/// Graph families recognized from parameters alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize),
    /// `K_{n,n}` minus a perfect matching.
    CompleteBipartiteMinusMatching(usize),
    /// `J(n, 2)`: 2-subsets, adjacent when they meet.
    Johnson(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Complete(n) => write!(f, "K_{n}"),
            Family::CompleteBipartite(n) => write!(f, "K_{n},{n}"),
            Family::CompleteBipartiteMinusMatching(n) => write!(f, "K_{n},{n}-{n}K_2"),
            Family::Johnson(n) => write!(f, "J({n},2)"),
        }
    }
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("J(").and_then(|r| r.strip_suffix(",2)")) {
            return inner.parse().ok().map(Family::Johnson);
        }
        let rest = s.strip_prefix("K_")?;
        if let Some((a, b)) = rest.split_once(',') {
            let n: usize = a.parse().ok()?;
            if let Some((b, m)) = b.split_once('-') {
                return (b.parse::<usize>().ok()? == n && m == format!("{n}K_2"))
                    .then_some(Family::CompleteBipartiteMinusMatching(n));
            }
            return (b.parse::<usize>().ok()? == n).then_some(Family::CompleteBipartite(n));
        }
        rest.parse().ok().map(Family::Complete)
    }
}

pub fn construct_named(f: Family) -> Result<Graph> {
    let bad = |m: &str| Err(Error::BadParams(format!("{f}: {m}")));
    match f {
        Family::Complete(n) => {
            if n == 0 {
                return bad("needs at least one vertex");
            }
            Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        Family::CompleteBipartite(n) | Family::CompleteBipartiteMinusMatching(n) => {
            if n == 0 {
                return bad("needs n >= 1");
            }
            let drop = matches!(f, Family::CompleteBipartiteMinusMatching(_));
            Graph::from_edges(
                2 * n,
                (0..n).flat_map(|i| (0..n).filter(move |&j| !(drop && i == j)).map(move |j| (i, n + j))),
            )
        }
        Family::Johnson(n) => {
            if n < 2 {
                return bad("needs n >= 2");
            }
            let p = k_subsets(n, 2);
            let mut e = Vec::new();
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i].iter().any(|x| p[j].contains(x)) {
                        e.push((i, j));
                    }
                }
            }
            Graph::from_edges(p.len(), e)
        }
    }
}

/// `Σ[2.K_1]`: vertex `(σ, i)` is `2σ + i`; `(σ,i) ~ (σ',j)` iff `σ ~ σ'`.
pub fn lex_double(s: &Graph) -> Graph {
    let mut e = Vec::with_capacity(4 * s.edge_count());
    for (u, v) in s.edges() {
        for i in 0..2 {
            for j in 0..2 {
                e.push((2 * u + i, 2 * v + j));
            }
        }
    }
    Graph::from_edges(2 * s.n(), e).expect("valid")
}

/// Vertices `u⁺ = u` and `u⁻ = n + u`; edges `{u⁺, w⁻}` for each arc `(u, w)`.
pub fn bipartite_double(n: usize, arcs: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges(2 * n, arcs.iter().map(|&(u, w)| (u, n + w)))
}

/// Quotient by a vertex partition given as a class index per vertex:
/// classes are adjacent when some edge joins them.
pub fn quotient(g: &Graph, class: &[usize]) -> Result<Graph> {
    if class.len() != g.n() {
        return Err(Error::BadParams("class map must cover every vertex".into()));
    }
    let k = class.iter().max().map_or(0, |&m| m + 1);
    Graph::from_edges(
        k,
        g.edges()
            .into_iter()
            .map(|(u, v)| (class[u], class[v]))
            .filter(|(a, b)| a != b),
    )
}
