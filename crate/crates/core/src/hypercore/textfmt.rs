//! Plain-text hypergraph format.
//!
//! ```text
//! n k m
//! v1 v2 ... vk      (m lines)
//! ```
//!
//! Fields are separated by single spaces, every line ends in `\n`, and there
//! are no comments. Written files list each edge ascending and the edges in
//! lexicographic order, so `to_text(&parse_text(s)?)` is a fixed point.
//! The parser accepts any whitespace, any vertex order within a line and
//! any edge order, and removes duplicate edges.

use std::fmt::Write as _;

use super::{Hypergraph, HypergraphError, Result, Vertex};

pub fn to_text(h: &Hypergraph) -> String {
    let mut out = String::with_capacity(16 + h.len() * h.k() * 4);
    let _ = writeln!(out, "{} {} {}", h.n(), h.k(), h.len());
    for e in h.edges() {
        for (i, v) in e.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_text(text: &str) -> Result<Hypergraph> {
    let err = |line: usize, msg: String| HypergraphError::Parse { line, msg };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|f| f.parse().map_err(|e| err(1, format!("bad header field {f:?}: {e}"))))
        .collect::<Result<_>>()?;
    let [n, k, m] = fields[..] else {
        return Err(err(1, format!("header needs `n k m`, got {header:?}")));
    };
    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let edge: Vec<Vertex> = line
            .split_whitespace()
            .map(|f| f.parse().map_err(|e| err(idx + 1, format!("bad vertex {f:?}: {e}"))))
            .collect::<Result<_>>()?;
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(err(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    Hypergraph::new(n, k, edges)
}
