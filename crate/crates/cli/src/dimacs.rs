//! DIMACS edge format and solution files. Vertex numbers are 1-based on
//! disk and 0-based inside the library.

use std::collections::BTreeSet;
use std::fmt::Write;

use mmfvs::{Graph, Vertex, VertexSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing `p edge <n> <m>` header")]
    MissingHeader,
    #[error("second header")]
    DuplicateHeader,
    #[error("malformed header `{0}`")]
    MalformedHeader(String),
    #[error("edge before header")]
    EdgeBeforeHeader,
    #[error("malformed edge line `{0}`")]
    MalformedEdge(String),
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(u64, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(u64, u64),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("unrecognised line `{0}`")]
    UnknownLine(String),
    #[error("malformed vertex id `{0}`")]
    MalformedId(String),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(u64),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = raw.trim();
        let mut words = t.split_whitespace();
        match words.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateHeader));
                }
                let w: Vec<&str> = words.collect();
                let parsed = match w.as_slice() {
                    ["edge", n, m] => n.parse().ok().zip(m.parse().ok()),
                    _ => None,
                };
                header =
                    Some(parsed.ok_or_else(|| {
                        err(line, ParseErrorKind::MalformedHeader(t.to_string()))
                    })?);
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return Err(err(line, ParseErrorKind::EdgeBeforeHeader));
                };
                let w: Vec<&str> = words.collect();
                let (a, b): (u64, u64) =
                    match w.as_slice() {
                        [a, b] => a.parse().ok().zip(b.parse().ok()).ok_or_else(|| {
                            err(line, ParseErrorKind::MalformedEdge(t.to_string()))
                        })?,
                        _ => return Err(err(line, ParseErrorKind::MalformedEdge(t.to_string()))),
                    };
                for x in [a, b] {
                    if x == 0 || x > n as u64 {
                        return Err(err(line, ParseErrorKind::OutOfRange(x, n)));
                    }
                }
                if a == b {
                    return Err(err(line, ParseErrorKind::SelfLoop(a)));
                }
                let key = (a.min(b) as u32 - 1, a.max(b) as u32 - 1);
                if !edges.insert(key) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge(a, b)));
                }
            }
            Some(_) => return Err(err(line, ParseErrorKind::UnknownLine(t.to_string()))),
        }
    }
    let (n, m) = header.ok_or_else(|| err(last, ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(err(
            last,
            ParseErrorKind::EdgeCount {
                declared: m,
                found: edges.len(),
            },
        ));
    }
    let edges: Vec<(u32, u32)> = edges.into_iter().collect();
    Ok(Graph::from_edges(n, &edges).expect("edges validated above"))
}

/// Writes `g` with vertices renumbered `1..=n` in ascending id order and
/// edges sorted; `comments` become leading `c` lines.
pub fn serialize_graph(g: &Graph, comments: &[String]) -> String {
    let ids: Vec<Vertex> = g.vertices().collect();
    let num = |v: Vertex| ids.binary_search(&v).expect("vertex of g") + 1;
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    let mut edges: Vec<(usize, usize)> = g.edges().map(|(a, b)| (num(a), num(b))).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

/// Vertex numbers separated by whitespace or commas; `#` starts a comment.
pub fn parse_solution(text: &str, n: usize) -> Result<VertexSet, ParseError> {
    let mut out = VertexSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let x: u64 = tok
                .parse()
                .map_err(|_| err(line, ParseErrorKind::MalformedId(tok.to_string())))?;
            if x == 0 || x > n as u64 {
                return Err(err(line, ParseErrorKind::OutOfRange(x, n)));
            }
            if !out.insert(Vertex(x as u32 - 1)) {
                return Err(err(line, ParseErrorKind::DuplicateVertex(x)));
            }
        }
    }
    Ok(out)
}

pub fn serialize_solution(s: &VertexSet, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    for v in s {
        writeln!(out, "{}", v.0 + 1).unwrap();
    }
    out
}
