//! Named graph constructions used as audit fixtures.
//!
//! Generators panic on out-of-range parameters; [`parse_family`] validates
//! user input first and reports [`FamilyError`] instead.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    Unknown(String),
    #[error("family {family}: {reason}")]
    BadParameter { family: &'static str, reason: String },
}

fn bad(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::BadParameter {
        family,
        reason: reason.into(),
    }
}

/// Cycle `C_n` on `0..n` in cyclic order. Requires `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n).expect("size in range");
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

pub fn empty(n: usize) -> Graph {
    Graph::new(n).expect("size in range")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::from_edges(10, &edges)
}

/// Kneser graph `K(a, b)`: the `b`-subsets of `0..a` in lexicographic order,
/// adjacent when disjoint.
pub fn kneser(a: usize, b: usize) -> Graph {
    assert!(a <= 63, "kneser ground set too large");
    let mut subsets: Vec<u64> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(start: usize, a: usize, b: usize, stack: &mut Vec<usize>, out: &mut Vec<u64>) {
        if stack.len() == b {
            out.push(stack.iter().fold(0, |m, &i| m | 1 << i));
            return;
        }
        for i in start..a {
            stack.push(i);
            rec(i + 1, a, b, stack, out);
            stack.pop();
        }
    }
    rec(0, a, b, &mut stack, &mut subsets);
    let mut g = Graph::new(subsets.len()).expect("size in range");
    for (i, &s) in subsets.iter().enumerate() {
        for (j, &t) in subsets.iter().enumerate().skip(i + 1) {
            if s & t == 0 {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

/// Mycielskian: originals `0..n`, shadows `n..2n` (shadow of `v` is adjacent
/// to the neighbors of `v`), apex `2n` adjacent to every shadow.
pub fn mycielski(g: &Graph) -> Graph {
    general_mycielski(g, 2)
}

/// Generalized Mycielskian with `levels` copies of the vertex set plus an apex
/// (`levels * n + 1` vertices). Level 0 carries the edges of `g`; for every
/// edge `uv`, copy `t` of `u` is joined to copy `t + 1` of `v` and vice versa;
/// the top level is joined to the apex. `levels = 2` is the ordinary
/// Mycielskian, `levels = 1` the cone over `g`.
pub fn general_mycielski(g: &Graph, levels: usize) -> Graph {
    assert!(levels >= 1, "at least one level required");
    let n = g.n();
    let apex = levels * n;
    let mut m = Graph::new(apex + 1).expect("size in range");
    for (u, v) in g.edges() {
        m.add_edge(u, v).expect("in range");
        for t in 0..levels - 1 {
            m.add_edge(t * n + u, (t + 1) * n + v).expect("in range");
            m.add_edge(t * n + v, (t + 1) * n + u).expect("in range");
        }
    }
    for v in 0..n {
        m.add_edge((levels - 1) * n + v, apex).expect("in range");
    }
    m
}

/// Grötzsch graph: the Mycielskian of `C_5`.
pub fn groetzsch() -> Graph {
    mycielski(&cycle(5))
}

fn num(family: &'static str, s: Option<&str>) -> Result<usize, FamilyError> {
    let s = s.ok_or_else(|| bad(family, "missing parameter"))?;
    s.parse()
        .map_err(|_| bad(family, format!("invalid number {s:?}")))
}

/// Parses a family address such as `cycle:7`, `kneser:5:2`, `petersen`,
/// `mycielski:cycle:5` or `gmycielski:3:cycle:7`.
pub fn parse_family(spec: &str) -> Result<Graph, FamilyError> {
    let (name, rest) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let mut params = rest.map(|r| r.split(':'));
    let mut next = || params.as_mut().and_then(|p| p.next());
    let limit = |family, n: usize, max: usize| {
        if n > max {
            Err(bad(family, format!("{n} exceeds the limit {max}")))
        } else {
            Ok(n)
        }
    };
    match name {
        "cycle" => {
            let n = limit("cycle", num("cycle", next())?, 1 << 16)?;
            if n < 3 {
                return Err(bad("cycle", "needs at least 3 vertices"));
            }
            Ok(cycle(n))
        }
        "path" => Ok(path(limit("path", num("path", next())?, 1 << 16)?)),
        "complete" => Ok(complete(limit("complete", num("complete", next())?, 4096)?)),
        "empty" => Ok(empty(limit("empty", num("empty", next())?, 1 << 16)?)),
        "petersen" => Ok(petersen()),
        "groetzsch" | "grotzsch" => Ok(groetzsch()),
        "kneser" => {
            let a = limit("kneser", num("kneser", next())?, 40)?;
            let b = num("kneser", next())?;
            if b == 0 || b > a {
                return Err(bad("kneser", "need 1 <= b <= a"));
            }
            Ok(kneser(a, b))
        }
        "mycielski" => {
            let base = rest.ok_or_else(|| bad("mycielski", "missing base graph"))?;
            Ok(mycielski(&parse_family(base)?))
        }
        "gmycielski" => {
            let rest = rest.ok_or_else(|| bad("gmycielski", "missing parameters"))?;
            let (levels, base) = rest
                .split_once(':')
                .ok_or_else(|| bad("gmycielski", "expected gmycielski:LEVELS:BASE"))?;
            let levels = num("gmycielski", Some(levels))?;
            if levels == 0 {
                return Err(bad("gmycielski", "levels must be at least 1"));
            }
            Ok(general_mycielski(&parse_family(base)?, levels))
        }
        other => Err(FamilyError::Unknown(other.to_string())),
    }
}
