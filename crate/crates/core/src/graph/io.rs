//! Line-oriented text format.
//!
//! ```text
//! # comment
//! graph <n> <m>            or   bipartite <left> <right> <m>
//! <u> <v> [w]                   <l> <r> [w]
//! ```
//!
//! Weights are integers or `p/q`; a missing weight means 1. Rendering always
//! writes the weight and lists edges in canonical order.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::{One, Signed};
use thiserror::Error;

use super::{parse_rational, BipartiteGraph, Graph, GraphError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header {text:?} (expected `graph <n> <m>` or `bipartite <left> <right> <m>`)")]
    MalformedHeader { line: usize, text: String },
    #[error("missing header")]
    MissingHeader,
    #[error("line {line}: malformed edge line {text:?}")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: malformed weight {text:?}")]
    MalformedWeight { line: usize, text: String },
    #[error("header declares {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("line {line}: vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, count: usize },
    #[error("line {line}: non-positive weight {weight}")]
    NonPositiveWeight { line: usize, weight: Rational },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    General(Graph),
    Bipartite(BipartiteGraph),
}

impl ParsedGraph {
    /// The general graph (bipartite inputs through their combined view).
    pub fn graph(&self) -> &Graph {
        match self {
            ParsedGraph::General(g) => g,
            ParsedGraph::Bipartite(b) => b.as_graph(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ParsedGraph::General(g) => render_graph(g),
            ParsedGraph::Bipartite(b) => render_bipartite(b),
        }
    }
}

enum Header {
    General { n: usize, m: usize },
    Bipartite { left: usize, right: usize, m: usize },
}

fn parse_header(line: usize, text: &str) -> Result<Header, ParseError> {
    let bad = || ParseError::MalformedHeader { line, text: text.to_string() };
    let fields: Vec<&str> = text.split_whitespace().collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match fields.as_slice() {
        ["graph", n, m] => Ok(Header::General { n: num(n)?, m: num(m)? }),
        ["bipartite", l, r, m] => Ok(Header::Bipartite { left: num(l)?, right: num(r)?, m: num(m)? }),
        _ => Err(bad()),
    }
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header_text) = lines.next().ok_or(ParseError::MissingHeader)?;
    let header = parse_header(header_line, header_text)?;
    let (sides, expected) = match header {
        Header::General { n, m } => ((n, n), m),
        Header::Bipartite { left, right, m } => ((left, right), m),
    };
    let bipartite = matches!(header, Header::Bipartite { .. });

    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(expected);
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(ParseError::MalformedEdge { line, text: text.to_string() });
        }
        let index =
            |s: &str| s.parse::<usize>().map_err(|_| ParseError::MalformedEdge { line, text: text.to_string() });
        let (a, b) = (index(fields[0])?, index(fields[1])?);
        for (x, count) in [(a, sides.0), (b, sides.1)] {
            if x >= count {
                return Err(ParseError::VertexOutOfRange { line, vertex: x, count });
            }
        }
        let weight = match fields.get(2) {
            Some(w) => parse_rational(w).ok_or_else(|| ParseError::MalformedWeight { line, text: w.to_string() })?,
            None => Rational::one(),
        };
        if !weight.is_positive() {
            return Err(ParseError::NonPositiveWeight { line, weight });
        }
        if !bipartite && a == b {
            return Err(ParseError::SelfLoop { line, vertex: a });
        }
        let key = if bipartite { (a, b) } else { (a.min(b), a.max(b)) };
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge { line, u: key.0, v: key.1 });
        }
        edges.push((a, b, weight));
    }
    if edges.len() != expected {
        return Err(ParseError::EdgeCountMismatch { expected, found: edges.len() });
    }

    Ok(if bipartite {
        ParsedGraph::Bipartite(BipartiteGraph::new(sides.0, sides.1, edges)?)
    } else {
        ParsedGraph::General(Graph::new(sides.0, edges)?)
    })
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.weight).unwrap();
    }
    out
}

pub fn render_bipartite(b: &BipartiteGraph) -> String {
    let mut out = format!("bipartite {} {} {}\n", b.left_count(), b.right_count(), b.edge_count());
    for (l, r, w) in b.edges() {
        writeln!(out, "{l} {r} {w}").unwrap();
    }
    out
}
