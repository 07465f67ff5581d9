//! Exact oracles for small instances: CFON validity, the CFON chromatic
//! number and conflict-free feasibility of hypergraphs.
//!
//! Both searches share one backtracking engine. Vertices are colored in a
//! fixed order; a vertex may take any color up to one more than the largest
//! color used so far, which removes color-permutation symmetry. Every edge is
//! checked as soon as its last member (in search order) is colored.
//!
//! The search is exponential. `chi_on_exact` is comfortable up to about 15
//! vertices; beyond that expect the node budget to trip.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{has_unique_color, open_neighborhood_hypergraph, Coloring, Hypergraph};
use crate::{Color, Vertex};

/// Resource limits for the exact searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest total edge size `sum |e|` accepted.
    pub max_incidences: usize,
    /// Search nodes (partial assignments) explored before giving up.
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_incidences: 4096,
            max_nodes: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Coloring),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiResult {
    /// The CFON chromatic number with an optimal witness.
    Exact { chi: usize, witness: Coloring },
    /// No CFON coloring exists within the cap.
    InfeasibleWithin(usize),
}

/// Least vertex whose open neighborhood has no uniquely colored member.
pub fn first_cfon_violation(g: &Graph, coloring: &Coloring) -> Result<Option<Vertex>> {
    if let Some(v) = g.first_isolated() {
        return Err(Error::IsolatedVertex(v));
    }
    if coloring.len() < g.n() {
        return Err(Error::IncompleteColoring {
            vertex: coloring.len(),
            len: coloring.len(),
        });
    }
    let mut counts: HashMap<Color, u32> = HashMap::new();
    Ok(g.vertices().find(|&v| {
        counts.clear();
        for &w in g.neighbors(v) {
            *counts.entry(coloring[w]).or_default() += 1;
        }
        !counts.values().any(|&c| c == 1)
    }))
}

pub fn cfon_valid(g: &Graph, coloring: &Coloring) -> Result<bool> {
    Ok(first_cfon_violation(g, coloring)?.is_none())
}

/// Smallest-last (degeneracy) order, reversed so that the densest core comes
/// first. Ties go to the lowest id.
pub fn degeneracy_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertex left");
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// Exact CFON chromatic number of `g`, trying `1, 2, ...` colors up to `cap`
/// (default `n`, which always suffices).
pub fn chi_on_exact(g: &Graph, cap: Option<usize>) -> Result<ChiResult> {
    chi_on_exact_with(g, cap, SearchBudget::default())
}

pub fn chi_on_exact_with(g: &Graph, cap: Option<usize>, budget: SearchBudget) -> Result<ChiResult> {
    if let Some(v) = g.first_isolated() {
        return Err(Error::IsolatedVertex(v));
    }
    let h = open_neighborhood_hypergraph(g)?;
    let order = degeneracy_order(g);
    let cap = cap.unwrap_or(g.n());
    if g.n() == 0 {
        return Ok(ChiResult::Exact {
            chi: 0,
            witness: Coloring::default(),
        });
    }
    for c in 1..=cap {
        if let Feasibility::Feasible(witness) = search(&h, &order, c, budget)? {
            return Ok(ChiResult::Exact { chi: c, witness });
        }
    }
    Ok(ChiResult::InfeasibleWithin(cap))
}

/// Whether `g` has a CFON coloring with at most `colors` colors.
pub fn cfon_feasible(g: &Graph, colors: usize) -> Result<Feasibility> {
    if let Some(v) = g.first_isolated() {
        return Err(Error::IsolatedVertex(v));
    }
    let h = open_neighborhood_hypergraph(g)?;
    search(&h, &degeneracy_order(g), colors, SearchBudget::default())
}

/// Whether `h` has a conflict-free coloring with at most `colors` colors.
/// Universe vertices are searched in ascending order.
pub fn cf_hypergraph_exact(h: &Hypergraph, colors: usize) -> Result<Feasibility> {
    cf_hypergraph_exact_with(h, colors, SearchBudget::default())
}

pub fn cf_hypergraph_exact_with(h: &Hypergraph, colors: usize, budget: SearchBudget) -> Result<Feasibility> {
    search(h, h.universe(), colors, budget)
}

fn search(h: &Hypergraph, order: &[Vertex], colors: usize, budget: SearchBudget) -> Result<Feasibility> {
    let incidences: usize = h.edges().iter().map(|e| e.members.len()).sum();
    if incidences > budget.max_incidences {
        return Err(Error::BudgetExceeded(format!(
            "{incidences} incidences exceed the limit of {}",
            budget.max_incidences
        )));
    }
    if h.edges().is_empty() {
        let mut c = Coloring::blank(h.id_space());
        for &v in order {
            c.set(v, 1);
        }
        return Ok(if colors >= 1 || order.is_empty() {
            Feasibility::Feasible(c)
        } else {
            Feasibility::Infeasible
        });
    }
    if colors == 0 {
        return Ok(Feasibility::Infeasible);
    }
    let mut pos = vec![usize::MAX; h.id_space()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closing = vec![Vec::new(); order.len()];
    for (e, edge) in h.edges().iter().enumerate() {
        let last = edge.members.iter().map(|&v| pos[v]).max().expect("nonempty edge");
        closing[last].push(e);
    }
    let mut engine = Engine {
        h,
        order,
        closing,
        colors: colors as Color,
        coloring: Coloring::blank(h.id_space()),
        nodes: 0,
        max_nodes: budget.max_nodes,
        buf: Vec::new(),
    };
    if engine.extend(0, 0)? {
        Ok(Feasibility::Feasible(engine.coloring))
    } else {
        Ok(Feasibility::Infeasible)
    }
}

struct Engine<'a> {
    h: &'a Hypergraph,
    order: &'a [Vertex],
    // closing[p]: edges whose last member sits at position p
    closing: Vec<Vec<usize>>,
    colors: Color,
    coloring: Coloring,
    nodes: u64,
    max_nodes: u64,
    buf: Vec<Color>,
}

impl Engine<'_> {
    fn extend(&mut self, p: usize, max_used: Color) -> Result<bool> {
        if p == self.order.len() {
            return Ok(true);
        }
        let v = self.order[p];
        for c in 1..=self.colors.min(max_used + 1) {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} search nodes",
                    self.max_nodes
                )));
            }
            self.coloring.set(v, c);
            let edges = self.h.edges();
            let ok = self.closing[p]
                .iter()
                .all(|&e| has_unique_color(&edges[e].members, &self.coloring, &mut self.buf));
            if ok && self.extend(p + 1, max_used.max(c))? {
                return Ok(true);
            }
        }
        self.coloring.set(v, 0);
        Ok(false)
    }
}
