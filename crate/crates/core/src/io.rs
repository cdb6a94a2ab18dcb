//! Edge-list text format.
//!
//! ```text
//! n m
//! u v        (m lines, 0 <= u < v < n)
//! ```
//!
//! Tokens are whitespace separated and lines end in LF. Several blocks may be
//! concatenated in one file (tree and forest dumps use one block per forest).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Parses exactly one block; trailing non-blank content is an error.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut blocks = parse_blocks(text)?;
    match blocks.len() {
        1 => Ok(blocks.pop().unwrap()),
        0 => Err(Error::parse(1, "missing header line `n m`")),
        k => Err(Error::parse(1, format!("expected one edge-list block, found {k}"))),
    }
}

/// Parses a sequence of concatenated blocks.
pub fn parse_blocks(text: &str) -> Result<Vec<Graph>> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let mut out = Vec::new();
    loop {
        let header = lines.by_ref().find(|(_, l)| !l.trim().is_empty());
        let Some((header_line, header)) = header else { break };
        let (n, m) = parse_pair(header, header_line, "header `n m`")?;
        let n = usize::try_from(n).map_err(|_| Error::parse(header_line, "n too large"))?;
        let mut edges: Vec<Edge> = Vec::with_capacity(m.min(1 << 24) as usize);
        let mut seen = std::collections::HashSet::with_capacity(edges.capacity());
        for _ in 0..m {
            let (line_no, line) = lines
                .next()
                .ok_or_else(|| Error::parse(header_line, format!("header announces {m} edges, file ends early")))?;
            if line.trim().is_empty() {
                return Err(Error::parse(header_line, format!("header announces {m} edges, found {}", edges.len())));
            }
            let (u, v) = parse_pair(line, line_no, "edge `u v`")?;
            if u == v {
                return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
            }
            if u > v {
                return Err(Error::parse(line_no, format!("expected u < v, got {u} {v}")));
            }
            if v >= n as u64 {
                return Err(Error::parse(line_no, format!("vertex {v} out of range for n = {n}")));
            }
            let e = (u as u32, v as u32);
            if !seen.insert(e) {
                return Err(Error::parse(line_no, format!("duplicate edge {u} {v}")));
            }
            edges.push(e);
        }
        out.push(Graph::from_edges_unchecked(n, edges));
    }
    Ok(out)
}

fn parse_pair(line: &str, line_no: usize, what: &str) -> Result<(u64, u64)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<u64> {
        let tok = it.next().ok_or_else(|| Error::parse(line_no, format!("expected {what}")))?;
        tok.parse::<u64>()
            .map_err(|_| Error::parse(line_no, format!("invalid integer `{tok}` in {what}")))
    };
    let a = next()?;
    let b = next()?;
    if let Some(extra) = it.next() {
        return Err(Error::parse(line_no, format!("unexpected token `{extra}` in {what}")));
    }
    Ok((a, b))
}

/// Writes one block with edges in the given order.
pub fn write_edges(out: &mut String, n: usize, edges: &[Edge]) {
    let _ = writeln!(out, "{} {}", n, edges.len());
    for &(u, v) in edges {
        let _ = writeln!(out, "{} {}", u.min(v), u.max(v));
    }
}

pub fn format_graph(g: &Graph) -> String {
    let mut s = String::new();
    write_edges(&mut s, g.n(), g.edges());
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(format_graph(&g), "4 3\n0 1\n1 2\n2 3\n");
    }

    #[test]
    fn line_numbered_errors() {
        let err = parse_edge_list("3 2\n0 1\n1 1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "self-loop at vertex 1".into() });
        let err = parse_edge_list("3 3\n0 1\n1 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_edge_list("3 1\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_edge_list("3 1\n2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_edge_list("3 x\n").is_err());
    }

    #[test]
    fn multiple_blocks() {
        let blocks = parse_blocks("3 2\n0 1\n1 2\n3 1\n0 2\n").unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[1].edges(), &[(0, 2)]);
        assert!(parse_edge_list("3 0\n3 0\n").is_err());
    }
}
