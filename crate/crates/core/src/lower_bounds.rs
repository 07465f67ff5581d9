//! Counting lower bound for CFON colorings of `L(K_m)`.
//!
//! A vertex coloring of `L(K_m)` is an edge coloring of `K_m`. For a clique
//! vertex `v`, bit `i` of its signature is set iff exactly one edge at `v` has
//! color `i`. If two clique vertices `u != v` share a signature, then for every
//! color the number of edges at `u` or `v` other than `uv` itself is never
//! exactly one, so the line-graph vertex `uv` has no uniquely colored
//! neighbor. Hence a valid coloring gives `m` distinct signatures, which needs
//! `2^k >= m`, i.e. at least `ceil(log2 m)` colors.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{build_nbr_hypergraph, Coloring};
use crate::{Color, Vertex};

/// Colors of the edges of `K_m`, keyed by `(u, v)` with `u < v`.
pub type CliqueEdgeColoring = HashMap<(Vertex, Vertex), Color>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureTable {
    pub m: usize,
    /// Largest color id; signatures have this many bits.
    pub k: usize,
    /// `sig[v][i - 1]` is bit `i` of vertex `v`.
    pub sig: Vec<Vec<bool>>,
}

impl SignatureTable {
    /// A pair of clique vertices with equal signatures, least first.
    pub fn first_collision(&self) -> Option<(Vertex, Vertex)> {
        let mut seen: HashMap<&[bool], Vertex> = HashMap::new();
        let mut best: Option<(Vertex, Vertex)> = None;
        for (v, s) in self.sig.iter().enumerate() {
            if let Some(&u) = seen.get(s.as_slice()) {
                best = Some(best.map_or((u, v), |b| b.min((u, v))));
            } else {
                seen.insert(s, v);
            }
        }
        best
    }

    pub fn render(&self, v: Vertex) -> String {
        self.sig[v].iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum LineCliqueCheck {
    /// Signatures are pairwise distinct, so `colors_used >= bound`.
    Certificate { colors_used: usize, bound: usize },
    /// `edge` is a vertex of `L(K_m)` with no uniquely colored neighbor.
    Counterexample { edge: (Vertex, Vertex) },
}

/// `ceil(log2 m)` for `m >= 3`.
pub fn lower_bound_line_clique(m: usize) -> Result<usize> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("m = {m} must be >= 3")));
    }
    Ok((usize::BITS - (m - 1).leading_zeros()) as usize)
}

fn clique_edges(m: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..m).flat_map(move |u| (u + 1..m).map(move |v| (u, v)))
}

fn lookup(coloring: &CliqueEdgeColoring, u: Vertex, v: Vertex) -> Result<Color> {
    match coloring.get(&(u.min(v), u.max(v))) {
        Some(&0) => Err(Error::InvalidArgument(format!("edge {{{u}, {v}}} has color 0"))),
        Some(&c) => Ok(c),
        None => Err(Error::PartialEdgeColoring(u.min(v), u.max(v))),
    }
}

fn check_total(m: usize, coloring: &CliqueEdgeColoring) -> Result<()> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("m = {m} must be >= 3")));
    }
    for (u, v) in clique_edges(m) {
        lookup(coloring, u, v)?;
    }
    if let Some(&(u, v)) = coloring.keys().find(|&&(u, v)| u >= v || v >= m) {
        return Err(Error::InvalidArgument(format!("{{{u}, {v}}} is not an edge of K_{m}")));
    }
    Ok(())
}

pub fn signature_vectors(m: usize, coloring: &CliqueEdgeColoring) -> Result<SignatureTable> {
    check_total(m, coloring)?;
    let k = coloring.values().copied().max().unwrap_or(0) as usize;
    let mut sig = Vec::with_capacity(m);
    for v in 0..m {
        let mut count = vec![0usize; k];
        for w in (0..m).filter(|&w| w != v) {
            count[lookup(coloring, v, w)? as usize - 1] += 1;
        }
        sig.push(count.into_iter().map(|c| c == 1).collect());
    }
    Ok(SignatureTable { m, k, sig })
}

/// Certificate when all signatures differ, otherwise a line-graph vertex
/// (edge of `K_m`) that fails the CFON condition. The failure is confirmed
/// against the line graph's neighborhood hypergraph before it is returned.
pub fn check_line_clique_lb(m: usize, coloring: &CliqueEdgeColoring) -> Result<LineCliqueCheck> {
    let table = signature_vectors(m, coloring)?;
    let Some((u, v)) = table.first_collision() else {
        let mut used: Vec<Color> = coloring.values().copied().collect();
        used.sort_unstable();
        used.dedup();
        let bound = lower_bound_line_clique(m)?;
        if used.len() < bound {
            return Err(Error::Invariant(format!(
                "{m} distinct signatures from only {} colors",
                used.len()
            )));
        }
        return Ok(LineCliqueCheck::Certificate {
            colors_used: used.len(),
            bound,
        });
    };

    // Case split on whether uv itself carries color i: the count of color i
    // on the other edges at u or v is exactly one only if the bits differ.
    let own = lookup(coloring, u, v)?;
    for i in 1..=table.k as Color {
        let at = |x: Vertex| -> Result<usize> {
            let mut c = 0;
            for w in (0..m).filter(|&w| w != x) {
                c += usize::from(lookup(coloring, x, w)? == i);
            }
            Ok(c)
        };
        let (cu, cv) = (at(u)?, at(v)?);
        let others = if own == i { cu + cv - 2 } else { cu + cv };
        let bits_differ = table.sig[u][i as usize - 1] != table.sig[v][i as usize - 1];
        if others == 1 && !bits_differ {
            return Err(Error::Invariant(format!(
                "color {i} unique near {{{u}, {v}}} with equal bits"
            )));
        }
    }

    let kmm = Graph::from_edges(m, clique_edges(m))?;
    let (line, edge_map) = kmm.line_graph()?;
    let vertex_colors = line_coloring_from_edges(&edge_map, coloring)?;
    let idx = edge_map
        .iter()
        .position(|&e| e == (u, v))
        .expect("clique edge present in line graph");
    let all: Vec<Vertex> = line.vertices().collect();
    let h = build_nbr_hypergraph(&line, &all, &[idx])?;
    if h.first_violation(&vertex_colors)? != Some(0) {
        return Err(Error::Invariant(format!(
            "signature collision at {{{u}, {v}}} but its line-graph neighborhood is conflict-free"
        )));
    }
    Ok(LineCliqueCheck::Counterexample { edge: (u, v) })
}

/// Reads a vertex coloring of a line graph as an edge coloring of the base graph.
pub fn edge_coloring_from_line(edge_map: &[(Vertex, Vertex)], coloring: &Coloring) -> Result<CliqueEdgeColoring> {
    if coloring.len() < edge_map.len() {
        return Err(Error::IncompleteColoring {
            vertex: coloring.len(),
            len: coloring.len(),
        });
    }
    Ok(edge_map.iter().enumerate().map(|(i, &e)| (e, coloring[i])).collect())
}

/// Inverse of [`edge_coloring_from_line`].
pub fn line_coloring_from_edges(edge_map: &[(Vertex, Vertex)], coloring: &CliqueEdgeColoring) -> Result<Coloring> {
    edge_map
        .iter()
        .map(|&(u, v)| lookup(coloring, u, v))
        .collect::<Result<Vec<_>>>()
        .map(Coloring::new)
}
