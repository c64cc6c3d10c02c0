//! Plain-text edge lists.
//!
//! ```text
//! n m undirected
//! u v
//! ...
//! ```
//!
//! The header gives the vertex count, the number of edge lines that follow, and
//! `directed` or `undirected`. Endpoints are 0-indexed and separated by a single
//! space; lines end in LF. [`write_edge_list`] emits the canonical form: each
//! undirected edge once as `u v` with `u < v`, all lines sorted.

use std::fmt::Write as _;

use crate::error::EdgeListError;
use crate::graph::{Directedness, Graph};

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.canonical_edges();
    let kind = match g.directedness() {
        Directedness::Directed => "directed",
        Directedness::Undirected => "undirected",
    };
    let mut out = String::with_capacity(16 + edges.len() * 12);
    let _ = writeln!(out, "{} {} {}", g.n(), edges.len(), kind);
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let err = |line: usize, message: String| EdgeListError { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));

    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| err(1, "missing header `n m directed|undirected`".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(err(hline, format!("header must have 3 fields, found {}", fields.len())));
    }
    let n: usize = fields[0].parse().map_err(|_| err(hline, format!("bad vertex count `{}`", fields[0])))?;
    let m: usize = fields[1].parse().map_err(|_| err(hline, format!("bad edge count `{}`", fields[1])))?;
    let directedness = match fields[2] {
        "directed" => Directedness::Directed,
        "undirected" => Directedness::Undirected,
        other => return Err(err(hline, format!("expected `directed` or `undirected`, found `{other}`"))),
    };

    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        last_line = lineno;
        if edges.len() == m {
            return Err(err(lineno, format!("more than the {m} declared edge lines")));
        }
        let mut parts = line.split_whitespace();
        let mut endpoint = |what: &str| -> Result<usize, EdgeListError> {
            let tok = parts.next().ok_or_else(|| err(lineno, format!("missing {what} endpoint")))?;
            tok.parse().map_err(|_| err(lineno, format!("bad {what} endpoint `{tok}`")))
        };
        let u = endpoint("first")?;
        let v = endpoint("second")?;
        if parts.next().is_some() {
            return Err(err(lineno, "trailing fields after `u v`".into()));
        }
        if u == v {
            return Err(err(lineno, format!("self-loop ({u}, {v})")));
        }
        if u >= n || v >= n {
            return Err(err(lineno, format!("endpoint of ({u}, {v}) outside 0..{n}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(last_line, format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges, directedness).map_err(|e| err(hline, e.to_string()))
}
