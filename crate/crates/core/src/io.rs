//! Text formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-based node
//! IDs. Blank lines and lines starting with `#` are ignored; edges are
//! written with `u < v` in lexicographic order. JSON: `{"n": .., "edges": [[u, v], ..]}`.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.node_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_pair(header_line, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more than the {m} edge line(s) announced in the header"),
            });
        }
        let [u, v] = parse_pair(line, l)?;
        if u >= n || v >= n || u == v {
            return Err(Error::Parse {
                line,
                message: format!("edge ({u}, {v}) is not a valid edge on {n} node(s)"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("header announces {m} edge(s), found {}", edges.len()),
        });
    }
    Graph::new(n, edges)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, found {:?}", text),
        });
    }
    let mut out = [0; 2];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| Error::Parse {
            line,
            message: format!("{field:?} is not a non-negative integer"),
        })?;
    }
    Ok(out)
}

/// Parses JSON, reporting syntax and schema errors with their line.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: format!("{e}"),
    })
}

pub fn to_json_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Reads a graph in either format; JSON is recognized by a leading `{`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        parse_edge_list(text)
    }
}
