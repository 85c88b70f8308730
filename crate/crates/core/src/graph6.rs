//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order, six bits per printable byte (offset 63).

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest vertex count written by [`to_graph6`] (the four-byte size form).
pub const MAX_GRAPH6_VERTICES: usize = 258_047;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed size header")]
    BadHeader,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    NonPrintable { offset: usize, byte: u8 },
    #[error("expected {expected} body bytes, found {found}")]
    BodyLength { expected: usize, found: usize },
    #[error("padding bits in the final byte are not zero")]
    TrailingBits,
    #[error("graph on {0} vertices is too large for graph6 output")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = *bytes.first().ok_or(Graph6Error::Empty)?;
    let sextets = |range: std::ops::Range<usize>| -> Result<usize, Graph6Error> {
        let chunk = bytes.get(range).ok_or(Graph6Error::BadHeader)?;
        chunk.iter().try_fold(0usize, |acc, &b| {
            if (63..=126).contains(&b) {
                Ok(acc << 6 | (b - 63) as usize)
            } else {
                Err(Graph6Error::BadHeader)
            }
        })
    };
    match first {
        63..=125 => Ok(((first - 63) as usize, 1)),
        126 if bytes.get(1) == Some(&126) => {
            let n = sextets(2..8)?;
            if n <= MAX_GRAPH6_VERTICES {
                return Err(Graph6Error::BadHeader);
            }
            Ok((n, 8))
        }
        126 => {
            let n = sextets(1..4)?;
            if n < 63 {
                return Err(Graph6Error::BadHeader);
            }
            Ok((n, 4))
        }
        _ => Err(Graph6Error::BadHeader),
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` prefix and surrounding
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, b)| !(63..=126).contains(*b))
    {
        return Err(Graph6Error::NonPrintable { offset, byte });
    }
    let (n, head) = decode_size(bytes)?;
    let body = &bytes[head..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::BodyLength {
            expected,
            found: body.len(),
        });
    }
    let pad = expected * 6 - nbits;
    if pad > 0 && (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(Graph6Error::TrailingBits);
    }

    let mut g = Graph::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let sextet = body[k / 6] - 63;
            if sextet >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encodes `g` without the optional header.
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n < 63 {
        out.push(63 + n as u8);
    } else if n <= MAX_GRAPH6_VERTICES {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + (n >> shift & 63) as u8);
        }
    } else {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
