//! Reading graphs and rendering matrices for people and programs.
//!
//! The text format has one arc `u v` (meaning `u -> v`) per line. Blank
//! lines and anything after `#` are ignored. A line holding a single vertex
//! declares it without edges. The JSON format is
//! `{"vertices": [...], "edges": [[u, v], ...]}` with `vertices` optional.

use std::path::Path;

use serde::Deserialize;

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, VertexId};
use crate::hermitian::CycloMatrix;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph_text(text: &str) -> Result<OrientedGraph> {
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut arcs = Vec::new();
    let mut arc_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let ids = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<VertexId>()
                    .map_err(|_| parse_error(line_no, format!("`{tok}` is not an integer vertex id")))
            })
            .collect::<Result<Vec<_>>>()?;
        if ids.len() > 2 {
            return Err(parse_error(line_no, "expected `u v` or a single vertex"));
        }
        for &v in &ids {
            if seen.insert(v) {
                vertices.push(v);
            }
        }
        if let [u, v] = ids[..] {
            arcs.push((u, v));
            arc_lines.push(line_no);
        }
    }
    OrientedGraph::new(&vertices, &arcs).map_err(|e| match e {
        Error::Loop { tail, head } | Error::MultipleArc { tail, head } | Error::Digon { tail, head } => {
            let line = arcs
                .iter()
                .zip(&arc_lines)
                .filter(|((u, v), _)| (*u, *v) == (tail, head))
                .map(|(_, &l)| l)
                .last()
                .unwrap_or(0);
            parse_error(line, e.to_string())
        }
        other => other,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    #[serde(default)]
    vertices: Option<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
}

pub fn parse_graph_json(text: &str) -> Result<OrientedGraph> {
    let g: GraphJson = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    match g.vertices {
        Some(vs) => OrientedGraph::new(&vs, &g.edges),
        None => OrientedGraph::from_arcs(&g.edges),
    }
}

/// Picks the JSON reader when the first non-blank character is `{`.
pub fn parse_graph(text: &str) -> Result<OrientedGraph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

pub fn read_graph(path: &Path) -> Result<OrientedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_error(0, format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

/// `vertices` and `edges` in the JSON graph format.
pub fn graph_json(graph: &OrientedGraph) -> serde_json::Value {
    serde_json::json!({
        "vertices": graph.vertices(),
        "edges": graph.edges().iter().map(|e| [e.tail, e.head]).collect::<Vec<_>>(),
    })
}

/// Approximate decimal rendering of a field element, e.g. `3.618034` or
/// `0.500000+0.866025i`.
pub fn decimal(x: &CycloNum) -> String {
    let z = x.to_complex();
    let clean = |v: f64| if v.abs() < 5e-10 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

pub fn matrix_json(m: &CycloMatrix) -> serde_json::Value {
    serde_json::to_value(m).expect("matrices serialize")
}

/// Right-aligned grid of approximate decimal entries.
pub fn matrix_preview(m: &CycloMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|row| row.iter().map(decimal).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
