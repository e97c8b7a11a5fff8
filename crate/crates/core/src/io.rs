//! Plain-text formats.
//!
//! * Edge lists: one edge per line as two whitespace-separated nonnegative
//!   integer labels. A line holding a single label declares a vertex, which
//!   is the only way to write `K_1`. Blank lines and `#` comments are ignored.
//! * Sequences and instances: integers separated by whitespace or commas.
//! * Partitions: one part per line, whitespace-separated labels.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Status, StatusSequence, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("empty input")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace/comma separated tokens of each line with 1-based positions;
/// anything after `#` is dropped.
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let mut out = Vec::new();
        let mut start = None;
        for (pos, ch) in line.char_indices() {
            let sep = ch.is_whitespace() || ch == ',';
            match (sep, start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    out.push((s + 1, &line[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &line[s..]));
        }
        (i + 1, out)
    })
}

fn parse_u64(line: usize, column: usize, tok: &str) -> Result<u64, ParseError> {
    tok.parse::<u64>().map_err(|_| {
        syntax(
            line,
            column,
            format!("expected a nonnegative integer, found `{tok}`"),
        )
    })
}

/// A graph whose dense vertex ids map back to the labels used in the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    /// `labels[v]` is the original label of vertex `v`, ascending.
    pub labels: Vec<u64>,
}

impl LabeledGraph {
    pub fn into_tree(self) -> Result<LabeledTree, GraphError> {
        Ok(LabeledTree {
            tree: Tree::try_from(self.graph)?,
            labels: self.labels,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    pub tree: Tree,
    pub labels: Vec<u64>,
}

pub fn parse_edge_list(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut raw_edges = Vec::new();
    let mut labels = BTreeMap::new();
    for (line, toks) in tokens(text) {
        match toks.as_slice() {
            [] => {}
            [(c, t)] => {
                labels.insert(parse_u64(line, *c, t)?, 0usize);
            }
            [(c1, t1), (c2, t2)] => {
                let u = parse_u64(line, *c1, t1)?;
                let v = parse_u64(line, *c2, t2)?;
                if u == v {
                    return Err(syntax(line, *c1, format!("self-loop at label {u}")));
                }
                labels.insert(u, 0);
                labels.insert(v, 0);
                raw_edges.push((line, u, v));
            }
            [_, _, (c, _), ..] => {
                return Err(syntax(line, *c, "expected exactly two labels per edge"))
            }
        }
    }
    if labels.is_empty() {
        return Err(ParseError::Empty);
    }
    for (id, slot) in labels.values_mut().enumerate() {
        *slot = id;
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (line, u, v) in raw_edges {
        let (a, b) = (labels[&u], labels[&v]);
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(syntax(line, 1, format!("duplicate edge {u}-{v}")));
        }
        edges.push((a, b));
    }
    let graph = Graph::from_edges(labels.len(), &edges)?;
    Ok(LabeledGraph {
        graph,
        labels: labels.into_keys().collect(),
    })
}

pub fn parse_tree(text: &str) -> Result<LabeledTree, ParseError> {
    Ok(parse_edge_list(text)?.into_tree()?)
}

/// Integers in file order.
pub fn parse_integers(text: &str) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::new();
    for (line, toks) in tokens(text) {
        for (c, t) in toks {
            out.push(parse_u64(line, c, t)?);
        }
    }
    if out.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(out)
}

pub fn parse_sequence(text: &str) -> Result<StatusSequence, ParseError> {
    Ok(StatusSequence::new(parse_integers(text)?))
}

/// One part per nonempty line.
pub fn parse_parts(text: &str) -> Result<Vec<Vec<u64>>, ParseError> {
    let mut parts = Vec::new();
    for (line, toks) in tokens(text) {
        if toks.is_empty() {
            continue;
        }
        let part = toks
            .iter()
            .map(|(c, t)| parse_u64(line, *c, t))
            .collect::<Result<Vec<_>, _>>()?;
        parts.push(part);
    }
    if parts.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(parts)
}

/// Edge list text, one `u v` line per edge; `K_1` is written as its lone label.
pub fn format_edge_list(graph: &Graph, labels: Option<&[u64]>) -> String {
    let label = |v: Vertex| labels.map_or(v as u64, |l| l[v]);
    let mut out = String::new();
    if graph.n() == 1 {
        writeln!(out, "{}", label(0)).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", label(u), label(v)).unwrap();
    }
    out
}

pub fn format_sequence(values: &[Status]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out
}

pub fn format_parts(parts: &[Vec<Vertex>], labels: Option<&[u64]>) -> String {
    let mut out = String::new();
    for part in parts {
        let line: Vec<String> = part
            .iter()
            .map(|&v| labels.map_or(v as u64, |l| l[v]).to_string())
            .collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}
