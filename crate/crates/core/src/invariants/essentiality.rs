//! Minimum partitions of the vertex set into parts inducing bipartite
//! subgraphs (combinatorial essentiality) or forests (vertex arboricity).
//!
//! Both are found by direct backtracking over part assignments with the part
//! predicate checked incrementally. Neither search uses the chromatic number.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use super::chromatic::Cancelled;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartMode {
    /// Every part induces a bipartite subgraph (no odd cycle).
    Bipartite,
    /// Every part induces a forest (no cycle).
    Forest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialityResult {
    /// Parts of a minimum partition, each sorted, ordered by smallest vertex.
    pub parts: Vec<Vec<usize>>,
    /// Number of parts minus one (zero for the empty graph).
    pub n: usize,
    pub mode: PartMode,
}

const FREE: usize = usize::MAX;

struct PartSearch<'a> {
    adj: &'a [Vec<usize>],
    mode: PartMode,
    order: Vec<usize>,
    part: Vec<usize>,
    // scratch for the incremental check
    mark: Vec<u32>,
    side: Vec<u8>,
    parent: Vec<usize>,
    stamp: u32,
    queue: VecDeque<usize>,
    cancel: Option<&'a AtomicBool>,
    nodes: u64,
}

impl<'a> PartSearch<'a> {
    fn new(adj: &'a [Vec<usize>], mode: PartMode, cancel: Option<&'a AtomicBool>) -> Self {
        let n = adj.len();
        Self {
            adj,
            mode,
            order: search_order(adj),
            part: vec![FREE; n],
            mark: vec![0; n],
            side: vec![0; n],
            parent: vec![FREE; n],
            stamp: 0,
            queue: VecDeque::new(),
            cancel,
            nodes: 0,
        }
    }

    /// Whether part `p` still satisfies the predicate after adding `v`.
    /// Only the component of `v` can change, so a BFS from `v` suffices.
    fn accepts(&mut self, v: usize, p: usize) -> bool {
        self.stamp += 1;
        let stamp = self.stamp;
        self.mark[v] = stamp;
        self.side[v] = 0;
        self.parent[v] = FREE;
        self.queue.clear();
        self.queue.push_back(v);
        while let Some(u) = self.queue.pop_front() {
            for &w in &self.adj[u] {
                if w != v && self.part[w] != p {
                    continue;
                }
                if self.mark[w] != stamp {
                    self.mark[w] = stamp;
                    self.side[w] = self.side[u] ^ 1;
                    self.parent[w] = u;
                    self.queue.push_back(w);
                    continue;
                }
                let closes_cycle = match self.mode {
                    PartMode::Bipartite => self.side[w] == self.side[u],
                    PartMode::Forest => self.parent[u] != w,
                };
                if closes_cycle {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, parts: usize, used: usize) -> Result<bool, Cancelled> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.cancel.is_some_and(|f| f.load(Ordering::Relaxed)) {
            return Err(Cancelled);
        }
        let v = self.order[depth];
        for p in 0..parts.min(used + 1) {
            if !self.accepts(v, p) {
                continue;
            }
            self.part[v] = p;
            if self.run(depth + 1, parts, used.max(p + 1))? {
                return Ok(true);
            }
            self.part[v] = FREE;
        }
        Ok(false)
    }
}

/// BFS order starting from a maximum-degree vertex in each component, so that
/// each vertex after the first of its component has an earlier neighbor.
fn search_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &s in &by_degree {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let start = order.len();
        order.push(s);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            let mut next: Vec<usize> = adj[u].iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
            for w in next {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}

fn collect_parts(part: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); count];
    for (v, &p) in part.iter().enumerate() {
        parts[p].push(v);
    }
    parts.retain(|p| !p.is_empty());
    parts.sort();
    parts
}

pub fn min_partition(
    g: &Graph,
    mode: PartMode,
    cancel: Option<&AtomicBool>,
) -> Result<EssentialityResult, Cancelled> {
    let adj = g.adjacency_lists();
    let n = g.n();
    if n == 0 {
        return Ok(EssentialityResult {
            parts: Vec::new(),
            n: 0,
            mode,
        });
    }
    // any two vertices induce a forest, so ceil(n/2) parts always suffice
    for parts in 1..=n.div_ceil(2) {
        let mut search = PartSearch::new(&adj, mode, cancel);
        if search.run(0, parts, 0)? {
            let found = collect_parts(&search.part, parts);
            return Ok(EssentialityResult {
                n: found.len() - 1,
                parts: found,
                mode,
            });
        }
    }
    unreachable!("pairs of vertices always form a valid partition")
}

/// Minimum partition into parts inducing bipartite subgraphs; `n` is the
/// combinatorial essentiality with respect to the parity double cover.
pub fn essentiality(g: &Graph) -> EssentialityResult {
    min_partition(g, PartMode::Bipartite, None).expect("no cancel flag")
}

/// Minimum partition into parts inducing forests; `n` is the vertex
/// arboricity minus one.
pub fn forest_essentiality(g: &Graph) -> EssentialityResult {
    min_partition(g, PartMode::Forest, None).expect("no cancel flag")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{bipartite, girth};
    use crate::families::{complete, cycle, groetzsch, path, petersen};
    use crate::graph::VertexSet;
    use crate::metric::induced;

    fn check_witness(g: &Graph, r: &EssentialityResult) {
        let mut all: Vec<usize> = r.parts.concat();
        all.sort_unstable();
        assert_eq!(all, (0..g.n()).collect::<Vec<_>>());
        for p in &r.parts {
            let (h, _) = induced(g, &VertexSet::from_vertices(g.n(), p.iter().copied()));
            match r.mode {
                PartMode::Bipartite => assert!(bipartite(&h)),
                PartMode::Forest => assert!(!girth(&h).is_finite()),
            }
        }
    }

    #[test]
    fn bipartite_parts() {
        let cases = [(cycle(6), 1), (cycle(5), 2), (complete(5), 3), (petersen(), 2), (groetzsch(), 2)];
        for (g, parts) in cases {
            let r = essentiality(&g);
            assert_eq!(r.parts.len(), parts, "{g:?}");
            assert_eq!(r.n, parts - 1);
            check_witness(&g, &r);
        }
    }

    #[test]
    fn forest_parts() {
        let cases = [(path(7), 1), (complete(4), 2), (cycle(5), 2), (complete(5), 3), (petersen(), 2)];
        for (g, parts) in cases {
            let r = forest_essentiality(&g);
            assert_eq!(r.parts.len(), parts, "{g:?}");
            check_witness(&g, &r);
        }
    }

    #[test]
    fn empty_graph() {
        let r = essentiality(&Graph::new(0).unwrap());
        assert!(r.parts.is_empty());
        assert_eq!(r.n, 0);
    }

    #[test]
    fn cancellation() {
        let flag = AtomicBool::new(true);
        let g = crate::families::mycielski(&crate::families::mycielski(&groetzsch()));
        assert_eq!(min_partition(&g, PartMode::Bipartite, Some(&flag)), Err(Cancelled));
    }
}
