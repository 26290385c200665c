//! The plain-text graph format:
//!
//! ```text
//! # comment
//! vertices: u v
//! edge e: u -> u
//! edge f: u -> v
//! ```

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{valid_id, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct GraphParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> GraphParseError {
    GraphParseError {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphParseError> {
    let mut vertices: Option<Vec<String>> = None;
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        last_line = n;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(err(n, "second `vertices:` line"));
            }
            let mut vs = Vec::new();
            for id in rest.split_whitespace() {
                if !valid_id(id) {
                    return Err(err(n, format!("invalid id `{id}`")));
                }
                if !seen.insert(id.to_string()) {
                    return Err(err(n, format!("duplicate id `{id}`")));
                }
                vs.push(id.to_string());
            }
            if vs.is_empty() {
                return Err(err(n, "no vertices declared"));
            }
            vertices = Some(vs);
        } else if let Some(rest) = line.strip_prefix("edge ") {
            let Some(vs) = &vertices else {
                return Err(err(n, "edge before the `vertices:` line"));
            };
            let (id, ends) = rest
                .split_once(':')
                .ok_or_else(|| err(n, "expected `edge <id>: <source> -> <range>`"))?;
            let (src, rng) = ends
                .split_once("->")
                .ok_or_else(|| err(n, "expected `<source> -> <range>`"))?;
            let (id, src, rng) = (id.trim(), src.trim(), rng.trim());
            if !valid_id(id) {
                return Err(err(n, format!("invalid id `{id}`")));
            }
            for v in [src, rng] {
                if !vs.iter().any(|x| x == v) {
                    return Err(err(n, format!("unknown vertex `{v}`")));
                }
            }
            if !seen.insert(id.to_string()) {
                return Err(err(n, format!("duplicate id `{id}`")));
            }
            edges.push((id.to_string(), src.to_string(), rng.to_string()));
        } else {
            return Err(err(n, format!("unrecognized line `{line}`")));
        }
    }
    let vertices = vertices.ok_or_else(|| err(last_line, "missing `vertices:` line"))?;
    Graph::from_parts(vertices, edges).map_err(|e| err(last_line, e.to_string()))
}

pub fn emit_graph(g: &Graph) -> String {
    let vs: Vec<&str> = g.vertices().map(|v| g.vertex_name(v)).collect();
    let mut out = format!("vertices: {}\n", vs.join(" "));
    for e in g.edges() {
        out.push_str(&format!(
            "edge {}: {} -> {}\n",
            g.edge_name(e),
            g.vertex_name(g.source(e)),
            g.vertex_name(g.range(e))
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rose_graph;

    #[test]
    fn parses_examples() {
        let r1 = parse_graph("vertices: v\nedge e: v -> v").unwrap();
        assert_eq!(r1.vertex_count(), 1);
        assert_eq!(r1.edge_count(), 1);
        let t = parse_graph("# toeplitz\nvertices: u v\nedge e: u -> u\nedge f: u -> v  # exit\n")
            .unwrap();
        assert!(t.is_sink(t.vertex_id("v").unwrap()));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        assert_eq!(parse_graph("edge e: u -> v").unwrap_err().line, 1);
        let e = parse_graph("vertices: u\n\nedge e: u -> w").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("unknown vertex"));
        assert!(parse_graph("vertices: u u").is_err());
        assert!(parse_graph("vertices: u\nedge u: u -> u").is_err());
        assert!(parse_graph("vertices: u-1").is_err());
        assert!(parse_graph("vertices: u\nvertices: w").is_err());
        assert!(parse_graph("").is_err());
        assert!(parse_graph("vertices: u\nloop u").is_err());
    }

    #[test]
    fn round_trip() {
        let g = rose_graph(3);
        let text = emit_graph(&g);
        assert_eq!(
            text,
            "vertices: v\nedge e1: v -> v\nedge e2: v -> v\nedge e3: v -> v\n"
        );
        assert_eq!(parse_graph(&text).unwrap(), g);
    }
}
