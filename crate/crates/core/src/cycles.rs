//! Cycle invariants: bipartiteness, girth, odd girth, and the parity
//! (bipartite) double cover.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::metric::bfs;

/// A cycle length that may be unbounded (no cycle of the requested kind).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(l) => Some(l),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(l) => write!(f, "{l}"),
            Length::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(l) => s.serialize_u64(*l as u64),
            Length::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Outcome of a bipartiteness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Side (0 or 1) of every vertex; each component's BFS root gets side 0.
    Bipartite(Vec<u8>),
    /// Vertices of an odd cycle, in cyclic order.
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Bipartite(_))
    }
}

struct Tree {
    dist: Vec<Option<usize>>,
    parent: Vec<usize>,
}

fn bfs_tree(g: &Graph, root: usize, dist: &mut [Option<usize>], parent: &mut [usize]) {
    dist[root] = Some(0);
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
}

/// Cycle through the tree edge paths of `u` and `w` plus the edge `uw`,
/// cut at their lowest common ancestor.
fn tree_cycle(tree: &Tree, mut u: usize, mut w: usize) -> Vec<usize> {
    let mut left = vec![u];
    let mut right = vec![w];
    while tree.dist[u] > tree.dist[w] {
        u = tree.parent[u];
        left.push(u);
    }
    while tree.dist[w] > tree.dist[u] {
        w = tree.parent[w];
        right.push(w);
    }
    while u != w {
        u = tree.parent[u];
        w = tree.parent[w];
        left.push(u);
        right.push(w);
    }
    right.pop();
    left.reverse();
    left.extend(right);
    left
}

/// Proper 2-coloring per component, or an odd cycle.
pub fn is_bipartite(g: &Graph) -> Bipartition {
    let n = g.n();
    let mut tree = Tree {
        dist: vec![None; n],
        parent: vec![0; n],
    };
    for root in 0..n {
        if tree.dist[root].is_some() {
            continue;
        }
        bfs_tree(g, root, &mut tree.dist, &mut tree.parent);
    }
    for (u, w) in g.edges() {
        if tree.dist[u] == tree.dist[w] {
            return Bipartition::OddCycle(tree_cycle(&tree, u, w));
        }
    }
    Bipartition::Bipartite(tree.dist.iter().map(|d| (d.unwrap() % 2) as u8).collect())
}

pub fn bipartite(g: &Graph) -> bool {
    is_bipartite(g).is_bipartite()
}

/// Length of a shortest cycle.
pub fn girth(g: &Graph) -> Length {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![None; n];
    let mut parent = vec![0; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = None);
        bfs_tree(g, root, &mut dist, &mut parent);
        for (u, w) in g.edges() {
            if parent[u] == w || parent[w] == u {
                continue;
            }
            if let (Some(a), Some(b)) = (dist[u], dist[w]) {
                best = best.min(a + b + 1);
            }
        }
    }
    if best == usize::MAX {
        Length::Infinite
    } else {
        Length::Finite(best)
    }
}

/// Bipartite double cover: vertex `v` lifts to `v` (sheet 0) and `v + n`
/// (sheet 1); every edge `uv` lifts to `u ~ v+n` and `u+n ~ v`.
pub fn double_cover(g: &Graph) -> Graph {
    let n = g.n();
    let mut d = Graph::new(2 * n).expect("double cover size in range");
    for (u, v) in g.edges() {
        d.add_edge(u, v + n).expect("in range");
        d.add_edge(u + n, v).expect("in range");
    }
    d
}

/// Shortest odd cycle length, computed as the least distance in the double
/// cover between the two lifts of a vertex.
pub fn odd_girth(g: &Graph) -> Length {
    let n = g.n();
    let cover = double_cover(g);
    (0..n)
        .filter_map(|v| bfs(&cover, v).get(v + n))
        .min()
        .map_or(Length::Infinite, Length::Finite)
}

/// Odd girth from BFS layer parity in `g` itself: an edge inside a BFS layer
/// at depth `d` closes an odd walk of length `2d + 1`. Independent of the
/// double-cover route in [`odd_girth`].
pub fn odd_girth_by_parity(g: &Graph) -> Length {
    shortest_odd_cycle(g).map_or(Length::Infinite, |c| Length::Finite(c.len()))
}

/// A shortest odd cycle, in cyclic order; `None` for bipartite graphs.
/// Among shortest cycles the one found from the lowest root wins.
pub fn shortest_odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut tree = Tree {
        dist: vec![None; n],
        parent: vec![0; n],
    };
    let mut best: Option<Vec<usize>> = None;
    for root in 0..n {
        tree.dist.iter_mut().for_each(|d| *d = None);
        bfs_tree(g, root, &mut tree.dist, &mut tree.parent);
        for (u, w) in g.edges() {
            let (Some(a), Some(b)) = (tree.dist[u], tree.dist[w]) else {
                continue;
            };
            if a == b && best.as_ref().map_or(true, |c| 2 * a + 1 < c.len()) {
                best = Some(tree_cycle(&tree, u, w));
            }
        }
    }
    best
}

/// Whether `cycle` lists the vertices of a simple cycle of `g` in order.
pub fn is_cycle_in(g: &Graph, cycle: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    cycle.len() >= 3
        && cycle.iter().all(|&v| v < g.n() && seen.insert(v))
        && (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}
