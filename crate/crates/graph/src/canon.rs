//! Canonical labeling by individualization and refinement.
//!
//! Ordered partitions are refined to equitable ones by neighbor counts; the
//! search tree individualizes vertices of the first non-singleton cell. Leaves
//! equal to the first or the best leaf yield automorphisms, which prune
//! siblings in the same orbit and allow a jump back to the divergence node.

use std::collections::VecDeque;

use arcmaps_core::{gate, Limits, Perm, Result};

use crate::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Vertex `v` gets canonical label `labeling[v]`.
    pub labeling: Vec<u32>,
    /// Canonically relabeled edges, `u < v`, sorted.
    pub edges: Vec<(u32, u32)>,
    /// Automorphisms met during the search; they generate the automorphism group.
    pub automorphisms: Vec<Perm>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.labeling.len()
    }

    pub fn bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 * self.edges.len() + 4);
        out.extend_from_slice(&(self.n() as u32).to_le_bytes());
        for &(u, v) in &self.edges {
            out.extend_from_slice(&u.to_le_bytes());
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }
}

/// Cells are identified by their start position in `elems`.
#[derive(Clone)]
struct Partition {
    elems: Vec<u32>,
    pos: Vec<u32>,
    cell: Vec<u32>,
    len: Vec<u32>,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        let mut len = vec![0; n];
        if n > 0 {
            len[0] = n as u32;
        }
        Partition {
            elems: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell: vec![0; n],
            len,
        }
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.elems.len() {
            let l = self.len[s] as usize;
            if l > 1 {
                return Some(s);
            }
            s += l;
        }
        None
    }

    fn individualize(&mut self, v: u32) -> usize {
        let s = self.cell[v as usize] as usize;
        let l = self.len[s] as usize;
        let p = self.pos[v as usize] as usize;
        let w = self.elems[s];
        self.elems.swap(s, p);
        self.pos[w as usize] = p as u32;
        self.pos[v as usize] = s as u32;
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u32;
        for i in s + 1..s + l {
            self.cell[self.elems[i] as usize] = (s + 1) as u32;
        }
        s
    }

    fn refine(&mut self, g: &Graph, start: &[usize], scratch: &mut Scratch) {
        let n = self.elems.len();
        let mut queue: VecDeque<usize> = start.iter().copied().collect();
        let queued = &mut scratch.queued;
        for &s in start {
            queued[s] = true;
        }
        let count = &mut scratch.count;
        while let Some(sp) = queue.pop_front() {
            queued[sp] = false;
            let sl = self.len[sp] as usize;
            let mut touched: Vec<u32> = Vec::new();
            for i in sp..sp + sl {
                for &w in g.neighbors(self.elems[i] as usize) {
                    if count[w as usize] == 0 {
                        touched.push(w);
                    }
                    count[w as usize] += 1;
                }
            }
            let mut cells: Vec<usize> = touched.iter().map(|&w| self.cell[w as usize] as usize).collect();
            cells.sort_unstable();
            cells.dedup();
            for c in cells {
                let l = self.len[c] as usize;
                if l == 1 {
                    continue;
                }
                let mut members: Vec<(u32, u32)> = self.elems[c..c + l].iter().map(|&v| (count[v as usize], v)).collect();
                if members.iter().all(|m| m.0 == members[0].0) {
                    continue;
                }
                members.sort_unstable();
                let was_queued = queued[c];
                let mut frag = c;
                for (i, &(k, v)) in members.iter().enumerate() {
                    let at = c + i;
                    if i > 0 && k != members[i - 1].0 {
                        self.len[frag] = (at - frag) as u32;
                        frag = at;
                    }
                    self.elems[at] = v;
                    self.pos[v as usize] = at as u32;
                    self.cell[v as usize] = frag as u32;
                }
                self.len[frag] = (c + l - frag) as u32;
                // Queue every fragment except one largest, unless the cell was pending.
                let mut frags = Vec::new();
                let mut s = c;
                while s < c + l {
                    frags.push(s);
                    s += self.len[s] as usize;
                }
                let skip = if was_queued {
                    usize::MAX
                } else {
                    *frags.iter().max_by_key(|&&f| (self.len[f], std::cmp::Reverse(f))).unwrap()
                };
                for f in frags {
                    if f != skip && !queued[f] {
                        queued[f] = true;
                        queue.push_back(f);
                    }
                }
            }
            for &w in &touched {
                count[w as usize] = 0;
            }
        }
        debug_assert!(count.iter().take(n).all(|&c| c == 0));
    }
}

struct Scratch {
    count: Vec<u32>,
    queued: Vec<bool>,
}

struct Leaf {
    elems: Vec<u32>,
    pos: Vec<u32>,
    cert: Vec<(u32, u32)>,
    path: Vec<u32>,
}

struct Search<'a> {
    g: &'a Graph,
    scratch: Scratch,
    first: Option<Leaf>,
    best: Option<Leaf>,
    auts: Vec<Perm>,
}

fn certificate(g: &Graph, pos: &[u32]) -> Vec<(u32, u32)> {
    let mut e: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (pos[u], pos[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    e.sort_unstable();
    e
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn find(parent: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut x = x;
    while parent[x as usize] != r {
        let next = parent[x as usize];
        parent[x as usize] = r;
        x = next;
    }
    r
}

impl Search<'_> {
    /// Returns the depth to jump back to, if a leaf produced an automorphism.
    fn run(&mut self, part: Partition, path: &mut Vec<u32>) -> Option<usize> {
        let depth = path.len();
        let Some(target) = part.first_nonsingleton() else {
            return self.leaf(part, path);
        };
        let cell: Vec<u32> = part.elems[target..target + part.len[target] as usize].to_vec();
        let mut explored: Vec<u32> = Vec::new();
        let mut cands = cell.clone();
        cands.sort_unstable();
        for v in cands {
            if !explored.is_empty() && self.equivalent_to_explored(path, v, &explored) {
                continue;
            }
            explored.push(v);
            let mut child = part.clone();
            let s = child.individualize(v);
            child.refine(self.g, &[s], &mut self.scratch);
            path.push(v);
            let jump = self.run(child, path);
            path.pop();
            if let Some(j) = jump {
                if j < depth {
                    return Some(j);
                }
            }
        }
        None
    }

    fn equivalent_to_explored(&self, path: &[u32], v: u32, explored: &[u32]) -> bool {
        let n = self.g.n();
        let fixing: Vec<&Perm> = self
            .auts
            .iter()
            .filter(|a| path.iter().all(|&p| a.apply(p as usize) == p as usize))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let mut parent: Vec<u32> = (0..n as u32).collect();
        for a in fixing {
            for x in 0..n {
                let (r1, r2) = (find(&mut parent, x as u32), find(&mut parent, a.apply(x) as u32));
                if r1 != r2 {
                    parent[r1.max(r2) as usize] = r1.min(r2);
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    fn leaf(&mut self, part: Partition, path: &[u32]) -> Option<usize> {
        let cert = certificate(self.g, &part.pos);
        let leaf = Leaf {
            elems: part.elems,
            pos: part.pos,
            cert,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                elems: leaf.elems.clone(),
                pos: leaf.pos.clone(),
                cert: leaf.cert.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().unwrap();
        for other in [first, best] {
            if other.cert == leaf.cert {
                let images: Vec<u32> = other.pos.iter().map(|&p| leaf.elems[p as usize]).collect();
                let aut = Perm::from_images_unchecked(images);
                let j = common_prefix(&other.path, &leaf.path);
                if !aut.is_identity() {
                    self.auts.push(aut);
                }
                return Some(j);
            }
        }
        if leaf.cert < best.cert {
            self.best = Some(leaf);
        }
        None
    }
}

pub fn canonical_form(g: &Graph, limits: &Limits) -> Result<CanonicalForm> {
    let n = g.n();
    if n as u64 > limits.canonical {
        return Err(gate("canonical form", n, limits.canonical));
    }
    let mut search = Search {
        g,
        scratch: Scratch {
            count: vec![0; n],
            queued: vec![false; n],
        },
        first: None,
        best: None,
        auts: Vec::new(),
    };
    let mut part = Partition::unit(n);
    if n > 0 {
        part.refine(g, &[0], &mut search.scratch);
    }
    debug_assert!(n == 0 || part.elems.len() == n);
    search.run(part, &mut Vec::new());
    let best = search.best.expect("search reaches a leaf");
    Ok(CanonicalForm {
        labeling: best.pos,
        edges: best.cert,
        automorphisms: search.auts,
    })
}

/// Isomorphism test through canonical forms.
pub fn iso(a: &Graph, b: &Graph, limits: &Limits) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    Ok(canonical_form(a, limits)?.edges == canonical_form(b, limits)?.edges)
}

#[cfg(test)]
impl Partition {
    fn is_discrete(&self) -> bool {
        self.first_nonsingleton().is_none()
    }

    fn cells(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut s = 0;
        while s < self.elems.len() {
            let l = self.len[s] as usize;
            let mut c = self.elems[s..s + l].to_vec();
            c.sort_unstable();
            out.push(c);
            s += l;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use arcmaps_core::PermGroup;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn refinement_splits_by_degree() {
        // path 0-1-2-3: ends, then middles
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut p = Partition::unit(4);
        let mut s = Scratch {
            count: vec![0; 4],
            queued: vec![false; 4],
        };
        p.refine(&g, &[0], &mut s);
        assert_eq!(p.cells(), vec![vec![0, 3], vec![1, 2]]);
        assert!(!p.is_discrete());
    }

    #[test]
    fn complete_graph_automorphisms() {
        let lim = Limits::default();
        let cf = canonical_form(&complete(6), &lim).unwrap();
        let aut = PermGroup::new(6, cf.automorphisms.clone()).unwrap();
        assert_eq!(aut.order_u64(), Some(720));
    }

    #[test]
    fn cycle_vs_two_triangles() {
        let lim = Limits::default();
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let tt = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!iso(&c6, &tt, &lim).unwrap());
        let cf = canonical_form(&c6, &lim).unwrap();
        assert_eq!(PermGroup::new(6, cf.automorphisms).unwrap().order_u64(), Some(12));
    }

    #[test]
    fn petersen_group() {
        let lim = Limits::default();
        let pairs = arcmaps_core::perm::k_subsets(5, 2);
        let mut e = Vec::new();
        for i in 0..10 {
            for j in i + 1..10 {
                if pairs[i].iter().all(|x| !pairs[j].contains(x)) {
                    e.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(10, e).unwrap();
        let cf = canonical_form(&g, &lim).unwrap();
        for a in &cf.automorphisms {
            assert!(g.is_automorphism(a));
        }
        assert_eq!(PermGroup::new(10, cf.automorphisms).unwrap().order_u64(), Some(120));
    }

    #[test]
    fn gate() {
        let lim = Limits {
            canonical: 3,
            ..Limits::default()
        };
        assert!(canonical_form(&complete(4), &lim).is_err());
    }
}
