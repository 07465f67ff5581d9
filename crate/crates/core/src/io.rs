//! Text formats.
//!
//! Graph file: a header line `p cfon <n> <m>`, then `m` lines `e <u> <v>` with
//! 1-based endpoints. Writers emit `u < v` in lexicographic order with LF line
//! endings; readers accept either orientation and any order. Lines starting
//! with `c` are comments; blank lines are ignored.
//!
//! Coloring file: one line `<v> <color>` per vertex, 1-based vertices, colors
//! at least 1.
//!
//! Vertex ids in parse errors are 1-based, as in the file.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Coloring;
use crate::{Color, Vertex};

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p cfon {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn number(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| perr(line, format!("`{s}` is not a non-negative integer")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (line, f) in content_lines(text) {
        match f[0] {
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "second header line"));
                }
                if f.len() != 4 || f[1] != "cfon" {
                    return Err(perr(line, "header must read `p cfon <n> <m>`"));
                }
                header = Some((number(line, f[2])?, number(line, f[3])?));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| perr(line, "edge before header"))?;
                if f.len() != 3 {
                    return Err(perr(line, "edge line must read `e <u> <v>`"));
                }
                let (u, v) = (number(line, f[1])?, number(line, f[2])?);
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(Error::VertexOutOfRange { vertex: w, n });
                    }
                }
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(perr(line, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| perr(0, "missing `p cfon` header"))?;
    if edges.len() != m {
        return Err(perr(0, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges)
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, &col) in c.as_slice().iter().enumerate() {
        let _ = writeln!(out, "{} {}", v + 1, col);
    }
    out
}

/// Parses a coloring file; vertices must be exactly `1..=N` for some `N`.
pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let mut entries: Vec<(Vertex, Color)> = Vec::new();
    for (line, f) in content_lines(text) {
        if f.len() != 2 {
            return Err(perr(line, "coloring line must read `<v> <color>`"));
        }
        let v = number(line, f[0])?;
        let c: Color = f[1]
            .parse()
            .map_err(|_| perr(line, format!("`{}` is not a color", f[1])))?;
        if v == 0 {
            return Err(perr(line, "vertices are 1-based"));
        }
        if c == 0 {
            return Err(perr(line, "colors must be at least 1"));
        }
        entries.push((v - 1, c));
    }
    let n = entries.len();
    let mut colors = vec![0; n];
    for (v, c) in entries {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
        if colors[v] != 0 {
            return Err(perr(0, format!("vertex {} colored twice", v + 1)));
        }
        colors[v] = c;
    }
    Ok(Coloring::new(colors))
}
