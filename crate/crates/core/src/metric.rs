//! Path metric: BFS distances, metric balls and spheres, induced subgraphs.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Graph, VertexSet};

/// Shortest-path distances from `source`; `None` marks another component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceField {
    pub source: usize,
    pub dist: Vec<Option<usize>>,
}

impl DistanceField {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }

    /// Largest finite distance.
    pub fn eccentricity(&self) -> usize {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }
}

/// BFS from `source`, optionally confined to `within` and cut off after
/// `limit` layers. Vertices outside `within` or beyond the cutoff are `None`.
///
/// Panics if `source` is out of range or not in `within`.
pub fn bfs_in(
    g: &Graph,
    source: usize,
    within: Option<&VertexSet>,
    limit: Option<usize>,
) -> DistanceField {
    assert!(source < g.n(), "source {source} out of range");
    if let Some(w) = within {
        assert!(w.contains(source), "source {source} outside the allowed set");
    }
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices are labeled");
        if limit.is_some_and(|l| du >= l) {
            continue;
        }
        for v in g.neighbors(u) {
            if dist[v].is_none() && within.map_or(true, |w| w.contains(v)) {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    DistanceField { source, dist }
}

pub fn bfs(g: &Graph, source: usize) -> DistanceField {
    bfs_in(g, source, None, None)
}

/// `B(x, r)`: vertices at distance at most `r` from `x`.
pub fn ball(g: &Graph, x: usize, r: usize) -> VertexSet {
    let d = bfs_in(g, x, None, Some(r));
    VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| d.dist[v].is_some()))
}

/// `S(x, r)`: vertices at distance exactly `r` from `x`.
pub fn sphere(g: &Graph, x: usize, r: usize) -> VertexSet {
    let d = bfs_in(g, x, None, Some(r));
    VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| d.dist[v] == Some(r)))
}

/// Ball sizes `|B(center, i)|` for `i = 0..=max_radius`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallProfile {
    pub center: usize,
    pub sizes: Vec<usize>,
}

impl BallProfile {
    pub fn max_radius(&self) -> usize {
        self.sizes.len() - 1
    }

    /// `|B(center, r)|`; radii past the computed range reuse the last size,
    /// which is exact once the profile has reached the eccentricity.
    pub fn size(&self, r: usize) -> usize {
        self.sizes[r.min(self.max_radius())]
    }
}

pub fn ball_profile(g: &Graph, center: usize, max_radius: usize) -> BallProfile {
    let d = bfs_in(g, center, None, Some(max_radius));
    let mut sizes = vec![0; max_radius + 1];
    for dist in d.dist.iter().flatten() {
        sizes[*dist] += 1;
    }
    for i in 1..sizes.len() {
        sizes[i] += sizes[i - 1];
    }
    BallProfile { center, sizes }
}

/// Subgraph induced on `s`, relabeled to `0..|s|` in increasing vertex order.
/// The returned map sends new ids back to the original ones.
pub fn induced(g: &Graph, s: &VertexSet) -> (Graph, Vec<usize>) {
    let map: Vec<usize> = s.iter().filter(|&v| v < g.n()).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let mut h = Graph::new(map.len()).expect("subgraph is no larger");
    for (i, &v) in map.iter().enumerate() {
        for w in g.neighbors(v) {
            let j = index[w];
            if j != usize::MAX && j > i {
                h.add_edge(i, j).expect("in range");
            }
        }
    }
    (h, map)
}

/// Connected components as vertex lists, ordered by their smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cycle_distances() {
        let c5 = families::cycle(5);
        let d = bfs(&c5, 0);
        assert_eq!(d.dist, vec![Some(0), Some(1), Some(2), Some(2), Some(1)]);
        assert_eq!(d.eccentricity(), 2);
    }

    #[test]
    fn other_component_is_unreachable() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let d = bfs(&g, 0);
        assert_eq!(d.dist, vec![Some(0), Some(1), None, None]);
    }

    #[test]
    fn petersen_distance_profile() {
        let p = families::petersen();
        for x in 0..10 {
            let d = bfs(&p, x);
            let at = |k| d.dist.iter().filter(|&&v| v == Some(k)).count();
            assert_eq!((at(1), at(2)), (3, 6));
        }
    }

    #[test]
    fn balls_and_spheres() {
        let c5 = families::cycle(5);
        assert_eq!(ball(&c5, 0, 1).iter().collect::<Vec<_>>(), vec![0, 1, 4]);
        assert_eq!(sphere(&c5, 0, 2).iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(ball(&c5, 3, 0).iter().collect::<Vec<_>>(), vec![3]);
        assert_eq!(ball(&families::petersen(), 7, 2).len(), 10);
    }

    #[test]
    fn profile_is_cumulative() {
        let p = ball_profile(&families::cycle(7), 2, 5);
        assert_eq!(p.sizes, vec![1, 3, 5, 7, 7, 7]);
        assert_eq!(p.size(9), 7);
    }

    #[test]
    fn induced_subgraphs() {
        let k3 = families::complete(3);
        let (h, map) = induced(&k3, &VertexSet::from_vertices(3, [0, 1]));
        assert_eq!(h, families::complete(2));
        assert_eq!(map, vec![0, 1]);
        let (e, _) = induced(&k3, &VertexSet::new(3));
        assert_eq!(e.n(), 0);
    }

    #[test]
    fn petersen_minus_closed_neighborhood_is_a_hexagon() {
        let p = families::petersen();
        let mut rest = VertexSet::full(10);
        rest.difference_with(&ball(&p, 0, 1));
        let (h, _) = induced(&p, &rest);
        assert_eq!(h.n(), 6);
        assert!((0..6).all(|v| h.degree(v) == 2));
        assert_eq!(crate::cycles::girth(&h), crate::cycles::Length::Finite(6));
    }
}
