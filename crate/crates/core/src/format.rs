//! Plain-text edge-list format.
//!
//! ```text
//! # optional comments
//! p edge <n> <e>
//! e <u> <v>
//! ```
//!
//! Vertex indices are 1-based in the file and 0-based in memory.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `p edge <n> <e>` header")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    #[error("line {line}: duplicate edge {u} {v} ignored")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub comments: Vec<String>,
    pub warnings: Vec<ParseWarning>,
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut declared = 0;
    let mut found = 0;
    let mut comments = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let malformed = |message: &str| ParseError::Malformed {
            line,
            message: message.to_string(),
        };
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields.as_slice() {
            ["p", "edge", n, e] => {
                if graph.is_some() {
                    return Err(malformed("second header"));
                }
                let n: usize = n.parse().map_err(|_| malformed("bad vertex count"))?;
                declared = e.parse().map_err(|_| malformed("bad edge count"))?;
                graph = Some(Graph::empty(n).map_err(|_| malformed("vertex count must be positive"))?);
            }
            ["e", u, v] => {
                let g = graph.as_mut().ok_or(ParseError::MissingHeader)?;
                let u: usize = u.parse().map_err(|_| malformed("bad vertex index"))?;
                let v: usize = v.parse().map_err(|_| malformed("bad vertex index"))?;
                let n = g.n();
                for vertex in [u, v] {
                    if vertex == 0 || vertex > n {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n });
                    }
                }
                found += 1;
                match g.add_edge(u - 1, v - 1) {
                    Ok(true) => {}
                    Ok(false) => warnings.push(ParseWarning::DuplicateEdge { line, u, v }),
                    Err(GraphError::SelfLoop(_)) => {
                        return Err(ParseError::SelfLoop { line, vertex: u })
                    }
                    Err(_) => unreachable!("indices checked above"),
                }
            }
            _ => return Err(malformed("expected `p edge <n> <e>` or `e <u> <v>`")),
        }
    }

    let graph = graph.ok_or(ParseError::MissingHeader)?;
    if declared != found {
        warnings.push(ParseWarning::EdgeCountMismatch { declared, found });
    }
    Ok(ParsedGraph {
        graph,
        comments,
        warnings,
    })
}

pub fn serialize_graph(g: &Graph) -> String {
    serialize_graph_with_comments(g, &[])
}

/// Canonical form: comments, header, then edges `u < v` in lexicographic order.
pub fn serialize_graph_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("p edge {} {}\n", g.n(), g.edge_count()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
