//! Ball-peeling coloring for graphs without short odd cycles.
//!
//! While the remaining graph has an odd cycle, a ball `B(x, k-1)` is removed;
//! its layers at distance `k-1, k-3, ...` from `x` get a color fresh to this
//! peel and its layers at distance `k-2, k-4, ...` get the shared color 0.
//! The bipartite remainder is colored with `{0, 1}`.

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{is_bipartite, shortest_odd_cycle, Bipartition};
use crate::graph::{Graph, VertexSet};
use crate::invariants::chromatic::{monochromatic_edge, Coloring};
use crate::metric::{bfs_in, components, induced};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("odd girth {odd_girth} is less than 2k+1 = {}", 2 * k + 1)]
    OddGirthTooSmall { odd_girth: usize, k: usize, cycle: Vec<usize> },
}

/// The ball `B(x, r)` contains an odd cycle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ball of radius {radius} around {center} contains an odd cycle of length {}", cycle.len())]
pub struct OddBall {
    pub center: usize,
    pub radius: usize,
    pub cycle: Vec<usize>,
}

/// A coloring of the subgraph induced by a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallColoring {
    /// Ball vertices in increasing order.
    pub vertices: Vec<usize>,
    /// Color of `vertices[i]` at index `i`.
    pub coloring: Coloring,
}

/// Two-colors `<B(x, r)>` by BFS-layer parity from `x`.
pub fn two_color_ball(g: &Graph, x: usize, r: usize) -> Result<BallColoring, OddBall> {
    let d = bfs_in(g, x, None, Some(r));
    let members = VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| d.dist[v].is_some()));
    let (h, map) = induced(g, &members);
    if let Bipartition::OddCycle(c) = is_bipartite(&h) {
        return Err(OddBall {
            center: x,
            radius: r,
            cycle: c.into_iter().map(|i| map[i]).collect(),
        });
    }
    let colors = map.iter().map(|&v| d.dist[v].expect("ball member") % 2).collect();
    Ok(BallColoring {
        vertices: map,
        coloring: Coloring::new(colors),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Peel {
    pub center: usize,
    /// Ball vertices in increasing order.
    pub ball: Vec<usize>,
    /// Distance from the center of `ball[i]` in the graph current at peel time.
    pub layers: Vec<usize>,
    /// The fresh color of this peel.
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PeelTrace {
    pub k: usize,
    pub peels: Vec<Peel>,
    pub remainder: Vec<usize>,
    pub colors: Vec<usize>,
    pub total_colors: usize,
}

/// Vertices in components of `<remaining>` that contain an odd cycle.
fn odd_part(g: &Graph, remaining: &VertexSet) -> Vec<usize> {
    let (h, map) = induced(g, remaining);
    let mut out = Vec::new();
    for comp in components(&h) {
        let (c, _) = induced(&h, &VertexSet::from_vertices(h.n(), comp.iter().copied()));
        if !is_bipartite(&c).is_bipartite() {
            out.extend(comp.iter().map(|&i| map[i]));
        }
    }
    out.sort_unstable();
    out
}

/// Colors `g`, assumed to have odd girth at least `2k + 1`, by peeling balls
/// of radius `k - 1`. The center of each peel maximizes the current ball size
/// among vertices of non-bipartite components, lowest id first.
pub fn ball_peel_coloring(g: &Graph, k: usize) -> Result<(Coloring, PeelTrace), PeelError> {
    if k == 0 {
        return Err(PeelError::ZeroK);
    }
    if let Some(c) = shortest_odd_cycle(g) {
        if c.len() < 2 * k + 1 {
            return Err(PeelError::OddGirthTooSmall {
                odd_girth: c.len(),
                k,
                cycle: c,
            });
        }
    }
    let n = g.n();
    let mut remaining = VertexSet::full(n);
    let mut colors = vec![usize::MAX; n];
    let mut peels = Vec::new();
    loop {
        let candidates = odd_part(g, &remaining);
        if candidates.is_empty() {
            break;
        }
        let mut best: Option<(usize, usize, Vec<Option<usize>>)> = None;
        for x in candidates {
            let d = bfs_in(g, x, Some(&remaining), Some(k - 1));
            let size = d.dist.iter().filter(|x| x.is_some()).count();
            if best.as_ref().map_or(true, |(s, _, _)| size > *s) {
                best = Some((size, x, d.dist));
            }
        }
        let (_, center, dist) = best.expect("candidates are non-empty");
        let color = peels.len() + 2;
        let mut ball = Vec::new();
        let mut layers = Vec::new();
        for (v, d) in dist.iter().enumerate() {
            let Some(d) = *d else { continue };
            ball.push(v);
            layers.push(d);
            colors[v] = if (k - 1 - d) % 2 == 0 { color } else { 0 };
            remaining.remove(v);
        }
        peels.push(Peel {
            center,
            ball,
            layers,
            color,
        });
    }
    let (h, map) = induced(g, &remaining);
    let Bipartition::Bipartite(side) = is_bipartite(&h) else {
        unreachable!("the loop stops only once the remainder is bipartite")
    };
    for (i, &v) in map.iter().enumerate() {
        colors[v] = side[i] as usize;
    }
    let coloring = Coloring::new(colors);
    let trace = PeelTrace {
        k,
        peels,
        remainder: map,
        colors: coloring.colors.clone(),
        total_colors: coloring.count,
    };
    Ok((coloring, trace))
}

/// Why a peel trace fails re-verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelViolation {
    #[error("peel {peel}: recorded ball or layers differ from BFS at vertex {vertex}")]
    LayerMismatch { peel: usize, vertex: usize },
    #[error("peel {peel}: edge {u}-{v} inside one layer")]
    IntraLayerEdge { peel: usize, u: usize, v: usize },
    #[error("peel {peel}: inner vertex {u} has neighbor {v} outside the ball")]
    InnerEscape { peel: usize, u: usize, v: usize },
    #[error("vertex {vertex} is not covered exactly once by the peels and remainder")]
    NotPartition { vertex: usize },
    #[error("edge {u}-{v} is monochromatic")]
    Improper { u: usize, v: usize },
    #[error("trace does not color every vertex")]
    Incomplete,
}

impl PeelViolation {
    /// The offending edge, when the failure is witnessed by one.
    pub fn edge(&self) -> Option<(usize, usize)> {
        match *self {
            PeelViolation::IntraLayerEdge { u, v, .. }
            | PeelViolation::InnerEscape { u, v, .. }
            | PeelViolation::Improper { u, v } => Some((u, v)),
            _ => None,
        }
    }
}

/// Replays `t` on `g`: every ball and its layers must match BFS in the graph
/// current at peel time, no layer may contain an edge, vertices below the
/// outer layer may have no neighbor outside their ball, the peels and the
/// remainder must partition the vertices, and the final coloring must be
/// proper.
pub fn peel_soundness_check(g: &Graph, t: &PeelTrace) -> Result<(), PeelViolation> {
    let n = g.n();
    if t.colors.len() != n || t.k == 0 {
        return Err(PeelViolation::Incomplete);
    }
    let mut current = VertexSet::full(n);
    for (i, p) in t.peels.iter().enumerate() {
        if p.ball.len() != p.layers.len() || !current.contains(p.center) {
            return Err(PeelViolation::LayerMismatch {
                peel: i,
                vertex: p.center,
            });
        }
        let d = bfs_in(g, p.center, Some(&current), Some(t.k - 1));
        let expected: Vec<(usize, usize)> = (0..n).filter_map(|v| d.dist[v].map(|x| (v, x))).collect();
        let recorded: Vec<(usize, usize)> = p.ball.iter().copied().zip(p.layers.iter().copied()).collect();
        if expected != recorded {
            let vertex = expected
                .iter()
                .zip(&recorded)
                .find(|(a, b)| a != b)
                .map_or_else(|| expected.len().min(recorded.len()), |(a, _)| a.0);
            return Err(PeelViolation::LayerMismatch { peel: i, vertex });
        }
        let layer: std::collections::HashMap<usize, usize> = recorded.iter().copied().collect();
        for (&u, &du) in p.ball.iter().zip(&p.layers) {
            for v in g.neighbors(u) {
                if !current.contains(v) {
                    continue;
                }
                match layer.get(&v) {
                    Some(&dv) if dv == du && u < v => {
                        return Err(PeelViolation::IntraLayerEdge { peel: i, u, v });
                    }
                    None if du + 1 < t.k => {
                        return Err(PeelViolation::InnerEscape { peel: i, u, v });
                    }
                    _ => {}
                }
            }
        }
        for &v in &p.ball {
            current.remove(v);
        }
    }
    let rest: Vec<usize> = current.iter().collect();
    if rest != t.remainder {
        let vertex = rest
            .iter()
            .zip(&t.remainder)
            .find(|(a, b)| a != b)
            .map_or_else(|| rest.len().min(t.remainder.len()), |(a, _)| *a);
        return Err(PeelViolation::NotPartition { vertex });
    }
    if let Some((u, v)) = monochromatic_edge(g, &t.colors) {
        return Err(PeelViolation::Improper { u, v });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::girth;
    use crate::cycles::Length;
    use crate::families::{cycle, groetzsch, petersen};
    use crate::invariants::chromatic::verify_coloring;

    #[test]
    fn two_colored_balls() {
        let c5 = cycle(5);
        let b = two_color_ball(&c5, 0, 1).unwrap();
        assert_eq!(b.vertices, vec![0, 1, 4]);
        assert_eq!(b.coloring.colors, vec![0, 1, 1]);
        let err = two_color_ball(&c5, 0, 2).unwrap_err();
        assert_eq!(err.cycle.len(), 5);
        let g = groetzsch();
        let b = two_color_ball(&g, 10, 1).unwrap();
        assert_eq!(b.vertices.len(), 6);
        let (h, _) = induced(&g, &VertexSet::from_vertices(11, b.vertices.iter().copied()));
        assert!(verify_coloring(&h, &b.coloring));
    }

    #[test]
    fn petersen_peels_once() {
        let g = petersen();
        let (c, t) = ball_peel_coloring(&g, 2).unwrap();
        assert!(verify_coloring(&g, &c));
        assert_eq!(t.peels.len(), 1);
        assert_eq!(t.peels[0].ball.len(), 4);
        assert_eq!(c.count, 3);
        let (rest, _) = induced(&g, &VertexSet::from_vertices(10, t.remainder.iter().copied()));
        assert_eq!(rest.n(), 6);
        assert_eq!(girth(&rest), Length::Finite(6));
        assert_eq!(peel_soundness_check(&g, &t), Ok(()));
    }

    #[test]
    fn bipartite_input_needs_no_peel() {
        let (c, t) = ball_peel_coloring(&cycle(6), 2).unwrap();
        assert!(t.peels.is_empty());
        assert_eq!(c.count, 2);
    }

    #[test]
    fn five_cycle() {
        let g = cycle(5);
        let (c, t) = ball_peel_coloring(&g, 2).unwrap();
        assert_eq!(t.peels.len(), 1);
        assert_eq!(t.remainder, vec![2, 3]);
        assert!(c.count <= 3 && verify_coloring(&g, &c));
        assert_eq!(peel_soundness_check(&g, &t), Ok(()));
    }

    #[test]
    fn nine_cycle() {
        let g = cycle(9);
        let (c, t) = ball_peel_coloring(&g, 4).unwrap();
        assert!(verify_coloring(&g, &c));
        assert_eq!(peel_soundness_check(&g, &t), Ok(()));
    }

    #[test]
    fn short_odd_cycle_is_rejected() {
        match ball_peel_coloring(&cycle(5), 3) {
            Err(PeelError::OddGirthTooSmall { odd_girth: 5, k: 3, cycle }) => assert_eq!(cycle.len(), 5),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(ball_peel_coloring(&cycle(5), 0).unwrap_err(), PeelError::ZeroK);
    }

    #[test]
    fn forged_traces_fail() {
        let g = petersen();
        let (_, t) = ball_peel_coloring(&g, 2).unwrap();
        let mut forged = t.clone();
        forged.peels[0].layers[1] = 0;
        assert!(matches!(peel_soundness_check(&g, &forged), Err(PeelViolation::LayerMismatch { .. })));

        let mut recolored = t.clone();
        let (u, v) = g.edges().next().unwrap();
        recolored.colors[u] = 7;
        recolored.colors[v] = 7;
        let err = peel_soundness_check(&g, &recolored).unwrap_err();
        assert_eq!(err.edge(), Some((u, v)));

        let mut dropped = t;
        dropped.remainder.pop();
        assert!(matches!(peel_soundness_check(&g, &dropped), Err(PeelViolation::NotPartition { .. })));
    }

    #[test]
    fn deterministic() {
        let g = groetzsch();
        assert_eq!(ball_peel_coloring(&g, 2), ball_peel_coloring(&g, 2));
    }
}
