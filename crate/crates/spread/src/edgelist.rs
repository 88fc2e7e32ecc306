//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! n 5
//! 0 1
//! 1 2
//! ```
//!
//! The `n` header is optional; without it the order is one more than the
//! largest id. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::path::Path;

use spread_core::Graph;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {order}")]
    OutOfRange { line: usize, vertex: usize, order: usize },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

pub fn parse(text: &str) -> Result<Graph, EdgeListError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let number = |t: &str| {
            t.parse::<usize>().map_err(|_| EdgeListError::Syntax {
                line,
                message: format!("expected a non-negative integer, found {t:?}"),
            })
        };
        match tokens.as_slice() {
            ["n", count] => {
                if declared.is_some() || !edges.is_empty() {
                    return Err(EdgeListError::Syntax { line, message: "the n header must come first, once".into() });
                }
                declared = Some((number(count)?, line));
            }
            [u, v] => {
                let (u, v) = (number(u)?, number(v)?);
                if u == v {
                    return Err(EdgeListError::SelfLoop { line, vertex: u });
                }
                edges.push((line, u, v));
            }
            _ => {
                return Err(EdgeListError::Syntax {
                    line,
                    message: format!("expected `u v` or `n <count>`, found {content:?}"),
                })
            }
        }
    }
    let order = match declared {
        Some((n, _)) => n,
        None => edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0),
    };
    for &(line, u, v) in &edges {
        if let Some(vertex) = [u, v].into_iter().find(|&w| w >= order) {
            return Err(EdgeListError::OutOfRange { line, vertex, order });
        }
    }
    Ok(Graph::from_edges(order, edges.into_iter().map(|(_, u, v)| (u, v))).expect("edges validated above"))
}

pub fn read(path: &Path) -> Result<Graph, EdgeListError> {
    let text = std::fs::read_to_string(path).map_err(|e| EdgeListError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse(&text)
}

/// Canonical text: the header, then edges `u v` with `u < v` in sorted order.
pub fn serialize(graph: &Graph) -> String {
    let mut out = format!("n {}\n", graph.order());
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}
