//! Graph ingestion and emission: graph6 records, plain edge lists, and the
//! deterministic report document.
//!
//! graph6 layout: a header N(n) followed by the C(n,2) upper-triangle cells
//! in column order (0,1),(0,2),(1,2),(0,3),..., packed six bits per byte
//! (most significant bit first), each byte offset by 63 into the printable
//! range. Unused padding bits in the last byte must be zero.

use crate::bits::VertexSet;
use crate::graph::{Graph, GraphError, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty graph6 record")]
    EmptyRecord,
    #[error("byte {byte:#04x} at offset {offset} outside the graph6 range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("truncated graph6 record: expected {expected} body bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after graph6 body at offset {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits in final graph6 byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("graph6 order {n} exceeds the supported maximum {max}")]
    OrderTooLarge { n: u64, max: usize },
    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn edge_list_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::EdgeList {
        line,
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// graph6
// ---------------------------------------------------------------------------

/// Upper-triangle cells in graph6 column order.
pub(crate) fn cells(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j)))
}

/// Parses one graph6 record (an optional trailing newline is tolerated).
pub fn parse_graph6(line: &[u8]) -> Result<Graph, FormatError> {
    let mut end = line.len();
    while end > 0 && (line[end - 1] == b'\n' || line[end - 1] == b'\r') {
        end -= 1;
    }
    let bytes = &line[..end];
    if bytes.is_empty() {
        return Err(FormatError::EmptyRecord);
    }
    for (offset, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::ByteOutOfRange { offset, byte: b });
        }
    }

    // Header: one byte for n <= 62, '~' + 3 bytes, or '~~' + 6 bytes.
    let (n, body_start) = if bytes[0] != 126 {
        ((bytes[0] - 63) as u64, 1)
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(FormatError::Truncated {
                expected: 4,
                found: bytes.len(),
            });
        }
        let n = bytes[1..4]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64);
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(FormatError::Truncated {
                expected: 8,
                found: bytes.len(),
            });
        }
        let n = bytes[2..8]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64);
        (n, 8)
    };
    if n > MAX_VERTICES as u64 {
        return Err(FormatError::OrderTooLarge {
            n,
            max: MAX_VERTICES,
        });
    }
    let n = n as usize;

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() < nbytes {
        return Err(FormatError::Truncated {
            expected: nbytes,
            found: body.len(),
        });
    }
    if body.len() > nbytes {
        return Err(FormatError::TrailingData {
            offset: body_start + nbytes,
        });
    }

    let bit = |cell: usize| -> bool {
        let b = body[cell / 6] - 63;
        b >> (5 - cell % 6) & 1 == 1
    };
    if nbytes > 0 {
        for pad in nbits..nbytes * 6 {
            if bit(pad) {
                return Err(FormatError::NonzeroPadding {
                    offset: body_start + nbytes - 1,
                });
            }
        }
    }

    let mut adj = vec![VertexSet::empty(n); n];
    for (cell, (i, j)) in cells(n).enumerate() {
        if bit(cell) {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Canonical graph6 record for the graph's labeling (no relabeling).
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= MAX_VERTICES {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        unreachable!("graphs are capped at MAX_VERTICES");
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in cells(n) {
        acc = (acc << 1) | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            out.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

// ---------------------------------------------------------------------------
// edge list
// ---------------------------------------------------------------------------

/// Parses the plain text format: a header line `n m`, then `m` lines `u v`.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| edge_list_err(1, "missing 'n m' header"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| edge_list_err(header_no, "header must be 'n m'"))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| edge_list_err(header_no, "header must be 'n m'"))?;
    if parts.next().is_some() {
        return Err(edge_list_err(header_no, "header must be exactly 'n m'"));
    }
    if n > MAX_VERTICES {
        return Err(FormatError::OrderTooLarge {
            n: n as u64,
            max: MAX_VERTICES,
        });
    }

    let mut adj = vec![VertexSet::empty(n); n];
    let mut count = 0usize;
    for (line_no, line) in lines {
        let mut parts = line.split_whitespace();
        let (u, v) = match (
            parts.next().and_then(|t| t.parse::<usize>().ok()),
            parts.next().and_then(|t| t.parse::<usize>().ok()),
            parts.next(),
        ) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(edge_list_err(line_no, "edge line must be 'u v'")),
        };
        if u >= n || v >= n {
            return Err(edge_list_err(
                line_no,
                format!("vertex {} out of range 0..{n}", u.max(v)),
            ));
        }
        if u == v {
            return Err(edge_list_err(line_no, format!("loop at vertex {u}")));
        }
        if adj[u].contains(v) {
            return Err(edge_list_err(
                line_no,
                format!("duplicate edge {}-{}", u.min(v), u.max(v)),
            ));
        }
        adj[u].insert(v);
        adj[v].insert(u);
        count += 1;
    }
    if count != m {
        return Err(edge_list_err(
            header_no,
            format!("header declares {m} edges but {count} were listed"),
        ));
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

/// Inverse of [`parse_edge_list`] with edges in lexicographic order.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// report document
// ---------------------------------------------------------------------------

/// Renders a report value deterministically: serde_json objects keep sorted
/// keys, vertex lists are emitted sorted by their producers.
pub fn render_report(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialize");
    s.push('\n');
    s
}
