use std::collections::VecDeque;
use std::fmt;

use crate::Graph;

/// Cycles longer than this are reported as `>12`.
pub const GIRTH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degrees {
    Regular(usize),
    /// Sorted `(degree, count)` pairs.
    Irregular(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInvariants {
    pub n: usize,
    pub edges: usize,
    pub degrees: Degrees,
    pub connected: bool,
    /// Part sizes when bipartite; the part of vertex 1 comes first.
    pub bipartite: Option<(usize, usize)>,
    /// `None` means no cycle of length at most `GIRTH_CAP`.
    pub girth: Option<usize>,
    /// `(n, k, λ, μ)`; absent for complete and edgeless graphs.
    pub srg: Option<(usize, usize, usize, usize)>,
    /// Number of vertices at each distance from vertex 1.
    pub distances: Vec<usize>,
}

impl GraphInvariants {
    pub fn valency(&self) -> Option<usize> {
        match self.degrees {
            Degrees::Regular(k) => Some(k),
            Degrees::Irregular(_) => None,
        }
    }

    pub fn girth_text(&self) -> String {
        match self.girth {
            Some(g) => g.to_string(),
            None => format!(">{GIRTH_CAP}"),
        }
    }
}

impl fmt::Display for GraphInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={}", self.n, self.edges)?;
        match &self.degrees {
            Degrees::Regular(k) => write!(f, " valency={k}")?,
            Degrees::Irregular(d) => write!(f, " degrees={d:?}")?,
        }
        write!(f, " connected={}", self.connected)?;
        match self.bipartite {
            Some((a, b)) => write!(f, " bipartite={a}+{b}")?,
            None => write!(f, " bipartite=false")?,
        }
        write!(f, " girth={}", self.girth_text())?;
        if let Some((n, k, l, m)) = self.srg {
            write!(f, " srg=({n},{k},{l},{m})")?;
        }
        let d: Vec<String> = self.distances.iter().map(|x| x.to_string()).collect();
        write!(f, " distances={}", d.join(","))
    }
}

fn bfs(g: &Graph, s: usize) -> Vec<i64> {
    let mut dist = vec![-1i64; g.n()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v as usize] < 0 {
                dist[v as usize] = dist[u] + 1;
                q.push_back(v as usize);
            }
        }
    }
    dist
}

/// Length of the shortest cycle through `s`, if at most `best - 1`.
fn shortest_cycle_from(g: &Graph, s: usize, best: usize, dist: &mut [u32], parent: &mut [u32], touched: &mut Vec<usize>) -> usize {
    let mut found = best;
    dist[s] = 0;
    parent[s] = u32::MAX;
    touched.push(s);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if 2 * dist[u] as usize >= found {
            break;
        }
        for &v in g.neighbors(u) {
            let v = v as usize;
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u as u32;
                touched.push(v);
                q.push_back(v);
            } else if parent[u] != v as u32 {
                found = found.min((dist[u] + dist[v]) as usize + 1);
            }
        }
    }
    for &t in touched.iter() {
        dist[t] = u32::MAX;
    }
    touched.clear();
    found
}

fn girth_over(g: &Graph, sources: impl Iterator<Item = usize>) -> Option<usize> {
    let n = g.n();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut touched = Vec::new();
    let mut best = GIRTH_CAP + 1;
    for s in sources {
        best = shortest_cycle_from(g, s, best, &mut dist, &mut parent, &mut touched);
        if best == 3 {
            break;
        }
    }
    (best <= GIRTH_CAP).then_some(best)
}

fn srg_params(g: &Graph, k: usize) -> Option<(usize, usize, usize, usize)> {
    let n = g.n();
    if k == 0 || k == n - 1 {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    let mut count = vec![0u32; n];
    for u in 0..n {
        for &w in g.neighbors(u) {
            for &x in g.neighbors(w as usize) {
                count[x as usize] += 1;
            }
        }
        for (v, c) in count.iter_mut().enumerate() {
            if v != u {
                let slot = if g.adjacent(u, v) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(*c),
                    Some(x) if x != *c => return None,
                    _ => {}
                }
            }
            *c = 0;
        }
    }
    Some((n, k, lambda? as usize, mu? as usize))
}

fn base(g: &Graph) -> GraphInvariants {
    let n = g.n();
    let mut hist: Vec<(usize, usize)> = Vec::new();
    let mut degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    degs.sort_unstable();
    for d in degs {
        match hist.last_mut() {
            Some((x, c)) if *x == d => *c += 1,
            _ => hist.push((d, 1)),
        }
    }
    let degrees = if hist.len() <= 1 {
        Degrees::Regular(hist.first().map_or(0, |h| h.0))
    } else {
        Degrees::Irregular(hist)
    };
    let (connected, distances) = if n == 0 {
        (true, Vec::new())
    } else {
        let d = bfs(g, 0);
        let max = *d.iter().max().unwrap();
        let mut distances = vec![0; max as usize + 1];
        for &x in &d {
            if x >= 0 {
                distances[x as usize] += 1;
            }
        }
        (d.iter().all(|&x| x >= 0), distances)
    };
    GraphInvariants {
        n,
        edges: g.edge_count(),
        srg: match degrees {
            Degrees::Regular(k) if n > 0 => srg_params(g, k),
            _ => None,
        },
        degrees,
        connected,
        bipartite: two_colouring(g),
        girth: None,
        distances,
    }
}

fn two_colouring(g: &Graph) -> Option<(usize, usize)> {
    let n = g.n();
    let mut col = vec![u8::MAX; n];
    let mut sizes = [0usize; 2];
    for s in 0..n {
        if col[s] != u8::MAX {
            continue;
        }
        col[s] = 0;
        sizes[0] += 1;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in g.neighbors(u) {
                let v = v as usize;
                if col[v] == u8::MAX {
                    col[v] = 1 - col[u];
                    sizes[col[v] as usize] += 1;
                    q.push_back(v);
                } else if col[v] == col[u] {
                    return None;
                }
            }
        }
    }
    Some((sizes[0], sizes[1]))
}

/// All invariants, girth from every vertex.
pub fn invariants(g: &Graph) -> GraphInvariants {
    let mut inv = base(g);
    inv.girth = girth_over(g, 0..g.n());
    inv
}

/// Same report for a graph known to be vertex-transitive: the girth is
/// measured from vertex 1 only.
pub fn invariants_transitive(g: &Graph) -> GraphInvariants {
    let mut inv = base(g);
    inv.girth = if g.n() == 0 { None } else { girth_over(g, 0..1) };
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn cycles() {
        let c5 = invariants(&cycle(5));
        assert_eq!(c5.girth, Some(5));
        assert_eq!(c5.bipartite, None);
        assert_eq!(c5.srg, Some((5, 2, 0, 1)));
        let c14 = invariants(&cycle(14));
        assert_eq!(c14.girth, None);
        assert_eq!(c14.girth_text(), ">12");
        assert_eq!(c14.bipartite, Some((7, 7)));
        assert_eq!(c14.distances, vec![1, 2, 2, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn forest_and_disconnected() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let i = invariants(&g);
        assert!(!i.connected);
        assert_eq!(i.girth, None);
        assert_eq!(i.degrees, Degrees::Irregular(vec![(1, 4), (2, 1)]));
    }
}
