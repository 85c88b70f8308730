//! Plain-text edge lists: one `u v` pair per line, optionally preceded by a
//! line holding only the vertex count. Blank lines and `#` comments are skipped.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: expected two vertex ids, found {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: invalid vertex id {text:?}")]
    BadId { line: usize, text: String },
    #[error("line {line}: negative vertex id {id}")]
    Negative { line: usize, id: i64 },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} not below the declared count {n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_id(tok: &str, line: usize) -> Result<usize, EdgeListError> {
    let id: i64 = tok.parse().map_err(|_| EdgeListError::BadId {
        line,
        text: tok.to_string(),
    })?;
    usize::try_from(id).map_err(|_| EdgeListError::Negative { line, id })
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            [n] if !seen_content => declared = Some(parse_id(n, line)?),
            [a, b] => {
                let (u, v) = (parse_id(a, line)?, parse_id(b, line)?);
                if u == v {
                    return Err(EdgeListError::SelfLoop { line, vertex: u });
                }
                if let Some(n) = declared {
                    if let Some(&bad) = [u, v].iter().find(|&&x| x >= n) {
                        return Err(EdgeListError::OutOfRange { line, vertex: bad, n });
                    }
                }
                edges.push((line, u, v));
            }
            _ => {
                return Err(EdgeListError::Malformed {
                    line,
                    text: content.to_string(),
                })
            }
        }
        seen_content = true;
    }

    let n = declared.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(_, u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    });
    let mut g = Graph::new(n)?;
    for (_, u, v) in edges {
        g.add_edge(u, v)?;
    }
    Ok(g)
}
