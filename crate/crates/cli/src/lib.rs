//! Graph file I/O and text formats shared by the `pizono` binary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use pizono::symmetric::{ColoredZGraph, EdgeColor};
use pizono::{Facet, FacetPair, VertexSet, ZGraph};

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

/// On-disk graph: 1-based vertices, edges optionally tagged `"r"`/`"b"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loaded {
    Plain(ZGraph),
    Colored(ColoredZGraph),
}

impl Loaded {
    pub fn graph(&self) -> &ZGraph {
        match self {
            Loaded::Plain(g) => g,
            Loaded::Colored(cg) => cg.base(),
        }
    }
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Loaded, ParseError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| ParseError(format!("invalid graph file: {}", e)))?;
        file.load()
    }

    pub fn load(&self) -> Result<Loaded, ParseError> {
        let n = self.vertices;
        let mut plain = Vec::new();
        let mut red = Vec::new();
        let mut blue = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (k, e) in self.edges.iter().enumerate() {
            let index = |v: &Value| -> Result<usize, ParseError> {
                match v.as_u64() {
                    Some(i) if i >= 1 && (i as usize) <= n => Ok(i as usize - 1),
                    _ => err(format!("edge {}: vertex {} not in 1..={}", k + 1, v, n)),
                }
            };
            let (i, j) = match e.as_slice() {
                [a, b] | [a, b, _] => (index(a)?, index(b)?),
                _ => return err(format!("edge {}: expected [i, j] or [i, j, color]", k + 1)),
            };
            if i == j {
                return err(format!("edge {}: loop at vertex {}", k + 1, i + 1));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return err(format!("edge {}: duplicate edge {}-{}", k + 1, i + 1, j + 1));
            }
            match e.get(2) {
                None => plain.push((i, j)),
                Some(c) if c == "r" => red.push((i, j)),
                Some(c) if c == "b" => blue.push((i, j)),
                Some(c) => return err(format!("edge {}: color must be \"r\" or \"b\", got {}", k + 1, c)),
            }
        }
        if !plain.is_empty() && !(red.is_empty() && blue.is_empty()) {
            return err("either every edge has a color tag or none does");
        }
        let tagged = !(red.is_empty() && blue.is_empty());
        let fail = |e: pizono::Error| ParseError(e.to_string());
        if tagged {
            Ok(Loaded::Colored(ColoredZGraph::new(n, &red, &blue).map_err(fail)?))
        } else {
            Ok(Loaded::Plain(ZGraph::from_edges(n, plain).map_err(fail)?))
        }
    }

    pub fn from_graph(g: &ZGraph) -> GraphFile {
        GraphFile {
            vertices: g.n(),
            edges: g
                .edges()
                .into_iter()
                .map(|(i, j)| vec![(i + 1).into(), (j + 1).into()])
                .collect(),
            labels: None,
        }
    }

    pub fn from_colored(cg: &ColoredZGraph) -> GraphFile {
        let edges = cg
            .colored_edges()
            .into_iter()
            .map(|(i, j, c)| {
                let tag = match c {
                    EdgeColor::Red => "r",
                    EdgeColor::Blue => "b",
                };
                vec![(i + 1).into(), (j + 1).into(), tag.into()]
            })
            .collect();
        GraphFile {
            vertices: cg.n(),
            edges,
            labels: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph file serializes")
    }
}

/// `1,2,3` style list of a vertex set, 1-based.
pub fn format_set(s: VertexSet) -> String {
    s.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

pub fn format_parts(parts: &[VertexSet]) -> String {
    parts.iter().map(|&p| format_set(p)).collect::<Vec<_>>().join("|")
}

pub fn format_pair(p: FacetPair) -> String {
    format_parts(&p.sides())
}

pub fn format_facet(f: Facet) -> String {
    format_parts(&[f.first, f.second])
}

/// Parses `"1,2|3,4"` (1-based, whitespace ignored) into parts.
pub fn parse_parts(text: &str, n: usize) -> Result<Vec<VertexSet>, ParseError> {
    let clean: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parts = Vec::new();
    for part in clean.split('|') {
        let mut s = VertexSet::EMPTY;
        for tok in part.split(',') {
            let v: usize = tok
                .parse()
                .map_err(|_| ParseError(format!("bad vertex {:?} in {:?}", tok, text)))?;
            if v == 0 || v > n {
                return err(format!("vertex {} not in 1..={}", v, n));
            }
            s.insert(v - 1);
        }
        parts.push(s);
    }
    Ok(parts)
}

/// Parses a facet written as two parts and checks it against `g`.
pub fn parse_facet_pair(text: &str, g: &ZGraph) -> Result<FacetPair, ParseError> {
    let parts = parse_parts(text, g.n())?;
    let [a, b] = parts.as_slice() else {
        return err(format!("facet {:?} must have exactly two parts", text));
    };
    let p = FacetPair::new(*a, *b);
    p.check(g)
        .map_err(|e| ParseError(format!("{:?} is not a facet: {}", text, e)))?;
    Ok(p)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT export of an undirected graph with string node labels.
pub fn to_dot(name: &str, labels: &[String], adjacency: &[Vec<usize>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", name);
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{} [label=\"{}\"];", i, dot_escape(l));
    }
    for (i, nbrs) in adjacency.iter().enumerate() {
        for &j in nbrs.iter().filter(|&&j| j > i) {
            let _ = writeln!(out, "  n{} -- n{};", i, j);
        }
    }
    out.push_str("}\n");
    out
}
