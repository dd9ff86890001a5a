//! Graph file formats: canonical JSON, plain edge-list text, and DOT
//! export with configuration colouring.
//!
//! All serializers emit canonical, newline-terminated output so files can
//! be compared byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dynamics::Configuration;
use crate::graph::{Graph, GraphError, VertexLabel};

#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<usize, VertexLabel>,
}

/// Canonical JSON form: edges once each with `u < v`, in order, labels
/// keyed by vertex id.
pub fn to_json(g: &Graph) -> String {
    let file = GraphFile {
        n: g.vertex_count(),
        edges: g.edges().collect(),
        labels: g.labels().clone(),
    };
    let mut s = serde_json::to_string(&file).expect("graph serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Graph, GraphError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let g = Graph::from_edges(file.n, file.edges)?;
    if let Some((&v, _)) = file.labels.iter().find(|(&v, _)| v >= file.n) {
        return Err(GraphError::InvalidVertex {
            vertex: v,
            vertex_count: file.n,
        });
    }
    Ok(g.with_labels(file.labels))
}

/// Edge-list text: a `n <count>` header followed by one `u v` line per
/// edge, `u < v`, sorted.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses edge-list text. The header is optional; without it the vertex
/// count is one past the largest endpoint. Labels do not survive this
/// format.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_seen: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let first = parts.next().unwrap();
        if first == "n" {
            if declared.is_some() || !edges.is_empty() {
                return Err(GraphError::Parse {
                    line,
                    message: "header must come first and appear once".into(),
                });
            }
            let count = parts
                .next()
                .ok_or_else(|| GraphError::Parse {
                    line,
                    message: "header needs a vertex count".into(),
                })?
                .parse()
                .map_err(|_| GraphError::Parse {
                    line,
                    message: "bad vertex count".into(),
                })?;
            declared = Some(count);
            continue;
        }
        let parse_endpoint = |tok: &str| {
            tok.parse::<usize>().map_err(|_| GraphError::Parse {
                line,
                message: format!("bad vertex id `{tok}`"),
            })
        };
        let u = parse_endpoint(first)?;
        let v = parse_endpoint(parts.next().ok_or_else(|| GraphError::Parse {
            line,
            message: "edge line needs two endpoints".into(),
        })?)?;
        if parts.next().is_some() {
            return Err(GraphError::Parse {
                line,
                message: "trailing tokens after edge".into(),
            });
        }
        if u == v {
            return Err(GraphError::Parse {
                line,
                message: format!("self-loop {u} {v}"),
            });
        }
        max_seen = Some(max_seen.map_or(u.max(v), |m| m.max(u.max(v))));
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| max_seen.map_or(0, |m| m + 1));
    Graph::from_edges(n, edges)
}

/// DOT export. With a configuration, collaborators are filled black and
/// defectors white.
pub fn to_dot(g: &Graph, config: Option<&Configuration>) -> String {
    let mut out = String::from("graph g {\n  node [shape=circle];\n");
    if let Some(c) = config {
        assert_eq!(c.len(), g.vertex_count());
        for v in 0..g.vertex_count() {
            let (fill, font) = if c.is_collaborator(v) {
                ("black", "white")
            } else {
                ("white", "black")
            };
            writeln!(
                out,
                "  {v} [style=filled, fillcolor={fill}, fontcolor={font}];"
            )
            .unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
