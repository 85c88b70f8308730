//! Exact chromatic number by DSATUR-ordered backtracking.

use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// A vertex coloring. `count` is the number of distinct colors used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        let mut seen: Vec<usize> = colors.clone();
        seen.sort_unstable();
        seen.dedup();
        Self {
            count: seen.len(),
            colors,
        }
    }
}

/// True iff `c` assigns a color to every vertex and no edge is monochromatic.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> bool {
    c.colors.len() == g.n() && g.edges().all(|(u, v)| c.colors[u] != c.colors[v])
}

/// First monochromatic edge, if any.
pub fn monochromatic_edge(g: &Graph, colors: &[usize]) -> Option<(usize, usize)> {
    g.edges().find(|&(u, v)| colors[u] == colors[v])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search cancelled")]
pub struct Cancelled;

const UNCOLORED: usize = usize::MAX;

struct Search<'a> {
    adj: &'a [Vec<usize>],
    m: usize,
    colors: Vec<usize>,
    // neighbor_colors[v * m + c]: colored neighbors of v with color c
    neighbor_colors: Vec<u32>,
    saturation: Vec<usize>,
    remaining: usize,
    cancel: Option<&'a AtomicBool>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [Vec<usize>], m: usize, cancel: Option<&'a AtomicBool>) -> Self {
        let n = adj.len();
        Self {
            adj,
            m,
            colors: vec![UNCOLORED; n],
            neighbor_colors: vec![0; n * m],
            saturation: vec![0; n],
            remaining: n,
            cancel,
            nodes: 0,
        }
    }

    fn pick(&self) -> usize {
        let mut best = UNCOLORED;
        for v in 0..self.adj.len() {
            if self.colors[v] != UNCOLORED {
                continue;
            }
            if best == UNCOLORED
                || (self.saturation[v], self.adj[v].len()) > (self.saturation[best], self.adj[best].len())
            {
                best = v;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        self.remaining -= 1;
        for &w in self.adj[v].iter() {
            let slot = &mut self.neighbor_colors[w * self.m + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = UNCOLORED;
        self.remaining += 1;
        for &w in self.adj[v].iter() {
            let slot = &mut self.neighbor_colors[w * self.m + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn run(&mut self, used: usize) -> Result<bool, Cancelled> {
        if self.remaining == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.cancel.is_some_and(|f| f.load(Ordering::Relaxed)) {
            return Err(Cancelled);
        }
        let v = self.pick();
        if self.saturation[v] == self.m {
            return Ok(false);
        }
        // colors above `used` are interchangeable; try only the first of them
        for c in 0..self.m.min(used + 1) {
            if self.neighbor_colors[v * self.m + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.run(used.max(c + 1))? {
                return Ok(true);
            }
            self.unassign(v, c);
        }
        Ok(false)
    }
}

/// A proper coloring with at most `m` colors, if one exists. Deterministic.
pub fn is_m_colorable(g: &Graph, m: usize) -> Option<Coloring> {
    is_m_colorable_cancellable(g, m, None).expect("no cancel flag")
}

/// As [`is_m_colorable`], polling `cancel` periodically during the search.
pub fn is_m_colorable_cancellable(
    g: &Graph,
    m: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Option<Coloring>, Cancelled> {
    let adj = g.adjacency_lists();
    m_colorable_lists(&adj, m, cancel)
}

fn m_colorable_lists(
    adj: &[Vec<usize>],
    m: usize,
    cancel: Option<&AtomicBool>,
) -> Result<Option<Coloring>, Cancelled> {
    if adj.is_empty() {
        return Ok(Some(Coloring::new(Vec::new())));
    }
    if m == 0 {
        return Ok(None);
    }
    let mut s = Search::new(adj, m, cancel);
    Ok(if s.run(0)? {
        Some(Coloring::new(s.colors))
    } else {
        None
    })
}

/// Greedy DSATUR coloring: an upper bound on the chromatic number.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.n();
    let adj = g.adjacency_lists();
    let mut s = Search::new(&adj, n.max(1), None);
    while s.remaining > 0 {
        let v = s.pick();
        let c = (0..n)
            .find(|&c| s.neighbor_colors[v * s.m + c] == 0)
            .expect("n colors always suffice");
        s.assign(v, c);
    }
    Coloring::new(s.colors)
}

/// Largest clique found by greedy extension from every vertex: a lower bound
/// on the chromatic number.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    for start in 0..g.n() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = g.neighbors(start).collect();
        while !candidates.is_empty() {
            let &v = candidates
                .iter()
                .max_by_key(|&&v| (candidates.iter().filter(|&&w| g.has_edge(v, w)).count(), std::cmp::Reverse(v)))
                .expect("non-empty");
            clique.push(v);
            candidates.retain(|&w| w != v && g.has_edge(v, w));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Chromatic number and an optimal coloring.
pub fn optimal_coloring(g: &Graph) -> (usize, Coloring) {
    optimal_coloring_cancellable(g, None).expect("no cancel flag")
}

pub fn optimal_coloring_cancellable(
    g: &Graph,
    cancel: Option<&AtomicBool>,
) -> Result<(usize, Coloring), Cancelled> {
    if g.n() == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let upper = dsatur_greedy(g);
    let lower = greedy_clique(g).len().max(1);
    let adj = g.adjacency_lists();
    for m in lower..upper.count {
        if let Some(c) = m_colorable_lists(&adj, m, cancel)? {
            return Ok((m, c));
        }
    }
    Ok((upper.count, upper))
}

pub fn chromatic_number(g: &Graph) -> usize {
    optimal_coloring(g).0
}
