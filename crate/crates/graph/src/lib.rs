//! Simple undirected graphs: construction, exchange format, invariants,
//! canonical labeling and recognition of the named families.

mod canon;
mod identify;
mod invariants;
mod named;
mod orbital;

pub use canon::{canonical_form, iso, CanonicalForm};
pub use identify::{identify, identify_with, Confirmation, Identification, Reference};
pub use invariants::{invariants, invariants_transitive, Degrees, GraphInvariants, GIRTH_CAP};
pub use named::{bipartite_double, construct_named, lex_double, quotient, Family};
pub use orbital::{orbital_graph, orbital_arcs};

use arcmaps_core::{Error, Perm, Result};

/// Simple graph on vertices `0..n`, stored as sorted neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Loops are rejected; repeated edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::PointOutOfRange {
                    point: u.max(v) + 1,
                    degree: n,
                });
            }
            if u == v {
                return Err(Error::BadParams(format!("loop at vertex {}", u + 1)));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, l) in self.adj.iter().enumerate() {
            for &v in l {
                if u < v as usize {
                    out.push((u, v as usize));
                }
            }
        }
        out
    }

    /// Vertex `v` becomes `p(v)`.
    pub fn relabel(&self, p: &Perm) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, l) in self.adj.iter().enumerate() {
            adj[p.apply(u)] = l.iter().map(|&v| p.apply(v as usize) as u32).collect();
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Graph { adj }
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.n() && self.relabel(p) == *self
    }

    /// Header `n m`, then one `u v` line per edge, 1-based, `u < v`, sorted.
    pub fn to_exchange(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    pub fn from_exchange(text: &str) -> Result<Graph> {
        let bad = |m: &str| Error::BadParams(format!("graph file: {m}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| bad("empty"))?;
        let nums = |l: &str| -> Result<Vec<usize>> {
            l.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad(&format!("not a number: {t}"))))
                .collect()
        };
        let h = nums(header)?;
        if h.len() != 2 {
            return Err(bad("header must be `n m`"));
        }
        let (n, m) = (h[0], h[1]);
        let mut edges = Vec::with_capacity(m);
        for l in lines {
            let e = nums(l)?;
            if e.len() != 2 || e[0] == 0 || e[1] == 0 || e[0] > n || e[1] > n {
                return Err(bad(&format!("bad edge line `{l}`")));
            }
            edges.push((e[0] - 1, e[1] - 1));
        }
        if edges.len() != m {
            return Err(bad(&format!("expected {m} edges, found {}", edges.len())));
        }
        let g = Graph::from_edges(n, edges)?;
        if g.edge_count() != m {
            return Err(bad("repeated edge"));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_round_trip() {
        let g = Graph::from_edges(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        let text = g.to_exchange();
        assert_eq!(text, "4 3\n1 2\n1 4\n2 3\n");
        assert_eq!(Graph::from_exchange(&text).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_exchange("3 1\n1 4\n").is_err());
        assert!(Graph::from_exchange("3 2\n1 2\n").is_err());
        assert!(Graph::from_exchange("3 2\n1 2\n2 1\n").is_err());
    }
}
