//! Exact canonical labeling for small graphs by individualization and
//! refinement.
//!
//! The canonical form is the graph6 string of the relabeling whose upper
//! triangle, read in graph6 bit order, is lexicographically largest among all
//! leaves of the search tree. Equitable refinement is label-invariant, so
//! isomorphic inputs explore isomorphic trees. Branches on a vertex that is a
//! twin (`N(u) - v = N(v) - u`) of an already explored vertex are skipped: the
//! transposition of twins is an automorphism fixing the current node.

use thiserror::Error;

use crate::graph::Graph;
use crate::graph6::to_graph6;

pub const MAX_CANON_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical labeling supports at most {MAX_CANON_VERTICES} vertices, got {0}")]
pub struct CanonError(pub usize);

type Cells = Vec<Vec<usize>>;

struct Canon {
    n: usize,
    adj: Vec<u16>,
    best: Option<u128>,
}

impl Canon {
    /// Splits cells by neighbor counts into every cell until stable. Fragments
    /// are ordered by their count signature, which keeps the result invariant
    /// under relabeling.
    fn refine(&self, mut cells: Cells) -> Cells {
        loop {
            let masks: Vec<u16> = cells
                .iter()
                .map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v))
                .collect();
            let mut next: Cells = Vec::with_capacity(self.n);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let sig = masks.iter().map(|m| (self.adj[v] & m).count_ones()).collect();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn code(&self, cells: &Cells) -> u128 {
        let mut pos = vec![0; self.n];
        for (i, c) in cells.iter().enumerate() {
            pos[c[0]] = i;
        }
        let mut inv = vec![0; self.n];
        for v in 0..self.n {
            inv[pos[v]] = v;
        }
        let mut code = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                code = code << 1 | (self.adj[inv[i]] >> inv[j] & 1) as u128;
            }
        }
        code
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let strip = !(1u16 << u | 1u16 << v);
        self.adj[u] & strip == self.adj[v] & strip
    }

    fn search(&mut self, cells: Cells, out: &mut Cells) {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let code = self.code(&cells);
            if self.best.map_or(true, |b| code > b) {
                self.best = Some(code);
                *out = cells;
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut child: Cells = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..target].iter().cloned());
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend(cells[target + 1..].iter().cloned());
            let refined = self.refine(child);
            self.search(refined, out);
        }
    }
}

/// Canonical relabeling permutation: vertex `v` of `g` maps to `perm[v]`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>, CanonError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(CanonError(n));
    }
    let adj = (0..n)
        .map(|v| g.neighbors(v).fold(0u16, |m, w| m | 1 << w))
        .collect();
    let mut canon = Canon { n, adj, best: None };
    let start = canon.refine(vec![(0..n).collect()]);
    let mut leaf = Vec::new();
    canon.search(start, &mut leaf);
    let mut perm = vec![0; n];
    for (i, c) in leaf.iter().enumerate() {
        perm[c[0]] = i;
    }
    Ok(perm)
}

/// Identical for isomorphic graphs and distinct otherwise.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, CanonError> {
    Ok(canonical_graph6(g)?.into_bytes())
}

/// The canonical form as a graph6 string.
pub fn canonical_graph6(g: &Graph) -> Result<String, CanonError> {
    let perm = canonical_labeling(g)?;
    Ok(to_graph6(&g.permuted(&perm)).expect("small graph encodes"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, empty, path, petersen};

    #[test]
    fn relabeled_cycles_agree() {
        let c5 = cycle(5);
        let shuffled = c5.permuted(&[3, 0, 4, 1, 2]);
        assert_ne!(c5, shuffled);
        assert_eq!(canonical_form(&c5), canonical_form(&shuffled));
    }

    #[test]
    fn cycle_vs_path() {
        assert_ne!(canonical_form(&cycle(5)), canonical_form(&path(5)));
    }

    #[test]
    fn three_labeled_paths_are_one_class() {
        // the three labeled copies of P_3 (triangle minus one edge)
        let forms: Vec<_> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| {
                let mut g = complete(3);
                g.remove_edge(a, b);
                canonical_form(&g).unwrap()
            })
            .collect();
        assert!(forms.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn symmetric_graphs_finish() {
        for g in [empty(12), complete(12), petersen(), cycle(12)] {
            let perm = canonical_labeling(&g).unwrap();
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..g.n()).collect::<Vec<_>>());
        }
        let matching = Graph::from_edges(12, &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11)]);
        assert_eq!(canonical_form(&matching), canonical_form(&matching.permuted(&[11, 5, 0, 3, 1, 2, 4, 6, 9, 7, 8, 10])));
    }

    #[test]
    fn too_large() {
        assert_eq!(canonical_form(&empty(13)), Err(CanonError(13)));
    }
}
