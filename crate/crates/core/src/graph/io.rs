//! Edge-list text format.
//!
//! ```text
//! n 5        # optional header, must come first
//! 0 1
//! 1 2        # '#' starts a comment
//! ```
//!
//! Without a header, `n` is one more than the largest id seen.

use std::io::{BufRead, Write};

use serde::Serialize;

use super::{Graph, Normalization};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LoadStats {
    pub edges_read: usize,
    pub dropped: Normalization,
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|e| match e.kind() {
        std::num::IntErrorKind::PosOverflow => Error::Parse {
            line,
            message: format!("vertex id {tok} overflows"),
        },
        _ => Error::Parse {
            line,
            message: format!("expected a non-negative integer, found {tok:?}"),
        },
    })
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Graph, LoadStats)> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two fields, found {}", toks.len()),
            });
        }
        if toks[0] == "n" {
            if header.is_some() || !edges.is_empty() {
                return Err(Error::Parse {
                    line: lineno,
                    message: "header \"n <count>\" must precede all edges".into(),
                });
            }
            header = Some(parse_id(toks[1], lineno)?);
            continue;
        }
        let u = parse_id(toks[0], lineno)?;
        let v = parse_id(toks[1], lineno)?;
        if u == usize::MAX || v == usize::MAX {
            return Err(Error::Parse {
                line: lineno,
                message: "vertex id out of range".into(),
            });
        }
        if let Some(n) = header {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { id: u.max(v), n });
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = header.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    let edges_read = edges.len();
    let (g, dropped) = Graph::from_edges_normalized(n, edges)?;
    Ok((
        g,
        LoadStats {
            edges_read,
            dropped,
        },
    ))
}

/// Writes the header line and then every edge `u v` with `u < v`, ascending.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "n {}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
