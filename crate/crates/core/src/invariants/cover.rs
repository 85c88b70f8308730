//! Triviality of the parity double cover over vertex subsets and metric balls.

use crate::cycles::{bipartite, Length};
use crate::graph::{Graph, VertexSet};
use crate::metric::{ball, ball_profile};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    parent[ra.max(rb)] = ra.min(rb);
    true
}

/// Whether the parity double cover is trivial over the subgraph induced by
/// `s`: its preimage has twice as many components as the subgraph itself.
/// Components are counted with union-find on the lifted vertices `2v`, `2v+1`.
pub fn pi_inessential(g: &Graph, s: &VertexSet) -> bool {
    let n = g.n();
    let mut base: Vec<usize> = (0..n).collect();
    let mut lift: Vec<usize> = (0..2 * n).collect();
    let mut base_components = s.len();
    let mut lift_components = 2 * s.len();
    for u in s.iter() {
        for v in g.neighbors(u) {
            if v <= u || !s.contains(v) {
                continue;
            }
            if union(&mut base, u, v) {
                base_components -= 1;
            }
            for sheet in 0..2 {
                if union(&mut lift, 2 * u + sheet, 2 * v + (1 - sheet)) {
                    lift_components -= 1;
                }
            }
        }
    }
    lift_components == 2 * base_components
}

/// Largest `r` such that every ball of radius `r` is π-inessential;
/// infinite for bipartite graphs.
pub fn triviality_radius(g: &Graph) -> Length {
    if bipartite(g) {
        return Length::Infinite;
    }
    // B(x, 0) = {x} is always trivial; some ball of radius n contains a
    // whole non-bipartite component
    let mut r = 0;
    loop {
        let next = r + 1;
        if (0..g.n()).any(|x| !pi_inessential(g, &ball(g, x, next))) {
            return Length::Finite(r);
        }
        r = next;
    }
}

/// `max_x |B(x, r)|` with the lowest maximizing center; `None` for the empty
/// graph.
pub fn max_ball_size(g: &Graph, r: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for x in 0..g.n() {
        let size = ball_profile(g, x, r).size(r);
        if best.map_or(true, |(b, _)| size > b) {
            best = Some((size, x));
        }
    }
    best
}
