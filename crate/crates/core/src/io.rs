//! Graph text format, graph6 import and DOT export.
//!
//! The text format is a line `n m` followed by `m` lines `u v` with 0-based
//! vertex ids. Everything after `#` on a line is ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the `n m` / `u v` text format.
pub fn parse_text(input: &str) -> Result<Graph, IoError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let pair = |line: usize, text: &str| -> Result<(usize, usize), IoError> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(line, format!("expected two integers, found `{text}`")));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(line, format!("`{s}` is not a non-negative integer")))
        };
        Ok((num(fields[0])?, num(fields[1])?))
    };
    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let (n, m) = pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
        edges.push(pair(line, text)?);
    }
    if edges.len() != m {
        return Err(parse_err(
            input.lines().count().max(1),
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::new(n, &edges)?)
}

/// Writes `g` in the text format.
pub fn write_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Parses one graph in graph6 format, with or without the `>>graph6<<` header.
pub fn parse_graph6(input: &str) -> Result<Graph, IoError> {
    let text = input.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes: Vec<u8> = text.bytes().collect();
    if bytes.is_empty() {
        return Err(IoError::Graph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(IoError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let six = |b: u8| usize::from(b - 63);
    let (n, body) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        (six(bytes[1]) << 12 | six(bytes[2]) << 6 | six(bytes[3]), &bytes[4..])
    } else {
        return Err(IoError::Graph6(
            "graphs with more than 258047 vertices are not supported".into(),
        ));
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(IoError::Graph6(format!(
            "expected {needed} adjacency bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if six(body[k / 6]) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Parses either format: a single whitespace-free token is read as graph6.
pub fn parse_graph(input: &str) -> Result<Graph, IoError> {
    let first = input
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l)
            if !l.contains(char::is_whitespace)
                && input.split_whitespace().filter(|t| !t.starts_with('#')).count() == 1 =>
        {
            parse_graph6(l)
        }
        _ => parse_text(input),
    }
}

/// DOT rendering of `g`; `highlight` vertices and the edges between them are
/// drawn in red.
pub fn to_dot(g: &Graph, name: &str, highlight: &[usize]) -> String {
    let mut marked = vec![false; g.n()];
    for &v in highlight {
        if v < g.n() {
            marked[v] = true;
        }
    }
    let mut out = format!("graph \"{}\" {{\n  node [shape=circle];\n", name.replace('"', "'"));
    for v in 0..g.n() {
        let style = if marked[v] {
            " [color=red]"
        } else if g.degree(v) == 2 {
            " [style=dashed]"
        } else {
            ""
        };
        let _ = writeln!(out, "  {v}{style};");
    }
    for &(a, b) in g.edges() {
        let style = if marked[a] && marked[b] { " [color=red]" } else { "" };
        let _ = writeln!(out, "  {a} -- {b}{style};");
    }
    out.push_str("}\n");
    out
}
