//! Deterministic conflict-free coloring with `d_max + 1` colors.
//!
//! # Algorithm
//!
//! Every edge starts *unhit*. Round `i` uses color `d_max + 2 - i` (so colors
//! are handed out in descending order from `d_max + 1`). In each round we scan
//! the uncolored vertices that still lie in some unhit edge, in ascending id
//! order, and add a vertex to the round set `S` unless one of its unhit edges
//! already holds a member of `S`. All of `S` receives the round color. An unhit
//! edge now holding exactly one member of `S` becomes *hit*.
//!
//! Why this is conflict-free: no unhit edge ever receives two members of the
//! same round set, so a hit edge contains exactly one vertex of the round
//! color, and that color is never handed out again. The base color 1 is
//! disjoint from every round color.
//!
//! Why `d_max` rounds suffice: after a round, every member of `S` has had all
//! its unhit edges hit. Every other candidate was rejected because one of its
//! unhit edges already contained a member of `S`, and that edge is now hit.
//! So each vertex's count of unhit edges drops by at least one per round while
//! it is positive, and it starts at most `d_max`.
//!
//! The cost is `O(d_max * sum |e|)`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{build_nbr_hypergraph, Coloring, Hypergraph};
use crate::{Color, Vertex};

/// Conflict-free coloring of `h` using colors in `1..=d_max + 1`.
/// Ids outside the universe are left at 0.
pub fn cf_color_bounded_degree(h: &Hypergraph) -> Coloring {
    let d_max = h.stats().max_vertex_degree;
    let inc = h.incidence();
    let edges = h.edges();

    let mut coloring = Coloring::blank(h.id_space());
    let mut colored = vec![false; h.id_space()];
    let mut unhit = vec![true; edges.len()];
    // live[v] = number of unhit edges containing v
    let mut live: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut remaining = edges.len();
    // members of the current round set per edge
    let mut hits = vec![0usize; edges.len()];

    let mut round_color = d_max as Color + 1;
    while remaining > 0 {
        assert!(round_color >= 2, "greedy CF coloring ran out of rounds");
        let mut round = Vec::new();
        for &v in h.universe() {
            if colored[v] || live[v] == 0 {
                continue;
            }
            if inc[v].iter().all(|&e| !unhit[e] || hits[e] == 0) {
                for &e in &inc[v] {
                    if unhit[e] {
                        hits[e] += 1;
                    }
                }
                round.push(v);
            }
        }
        for &v in &round {
            colored[v] = true;
            coloring.set(v, round_color);
        }
        for (e, edge) in edges.iter().enumerate() {
            if unhit[e] && hits[e] == 1 {
                unhit[e] = false;
                remaining -= 1;
                for &w in &edge.members {
                    live[w] -= 1;
                }
            }
            hits[e] = 0;
        }
        round_color -= 1;
    }
    for &v in h.universe() {
        if !colored[v] {
            coloring.set(v, 1);
        }
    }
    debug_assert!(edges
        .iter()
        .enumerate()
        .all(|(e, edge)| !unhit[e] || !edge.members.iter().all(|&v| colored[v])));
    coloring
}

/// Colors `B = V \ A` so that every vertex of `A` has a uniquely colored
/// neighbor. Vertices of `A` get the blank color 0.
///
/// Requires `A` independent and no vertex of `A` isolated; isolation elsewhere
/// in the graph is irrelevant to the construction. When `g` is `S_k`-free each
/// vertex of `B` has at most `k - 1` neighbors in `A`, so at most `k` colors
/// are used.
pub fn lemma3_color(g: &Graph, independent: &[Vertex]) -> Result<Coloring> {
    let (coloring, _) = lemma3_color_with_hypergraph(g, independent)?;
    Ok(coloring)
}

/// As [`lemma3_color`], also returning the hypergraph that was colored.
/// Colors are relabeled to `1..=c` preserving their order, so the palette is
/// exactly the number of colors used.
pub fn lemma3_color_with_hypergraph(g: &Graph, independent: &[Vertex]) -> Result<(Coloring, Hypergraph)> {
    if let Some(&v) = independent.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if let Some((u, v)) = g.find_edge_within(independent) {
        return Err(Error::NotIndependent(u, v));
    }
    if let Some(&v) = independent.iter().find(|&&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let in_a = g.mask_of(independent);
    let rest: Vec<Vertex> = g.vertices().filter(|&v| !in_a[v]).collect();
    let h = build_nbr_hypergraph(g, &rest, independent)?;
    let mut coloring = cf_color_bounded_degree(&h);
    let mut used: Vec<Color> = rest.iter().map(|&v| coloring[v]).collect();
    used.sort_unstable();
    used.dedup();
    for &v in &rest {
        let rank = used.binary_search(&coloring[v]).expect("color in use");
        coloring.set(v, rank as Color + 1);
    }
    Ok((coloring, h))
}
