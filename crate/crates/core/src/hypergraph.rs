//! Owner-tagged hypergraphs built from open neighborhoods, and the
//! conflict-free validity check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::{Color, Vertex};

/// One hyperedge together with the vertex whose neighborhood induced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperEdge {
    pub owner: Vertex,
    pub members: Vec<Vertex>,
}

/// A hypergraph over a subset (`universe`) of the id space `0..id_space`.
///
/// Members are sorted and duplicate-free; edges are nonempty. Two owners may
/// induce the same member set, and both edges are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    id_space: usize,
    universe: Vec<Vertex>,
    edges: Vec<HyperEdge>,
}

/// Vertex-to-color map over an id space. Color 0 is the blank color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Coloring(Vec<Color>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HypergraphStats {
    /// Largest number of edges containing one vertex.
    pub max_vertex_degree: usize,
    /// Largest number of other edges that one edge meets.
    pub max_intersections: usize,
    pub min_edge_size: usize,
    pub max_edge_size: usize,
}

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Self(colors)
    }

    pub fn blank(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Color> {
        self.0
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Color {
        self.0[v]
    }

    #[inline]
    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0[v] = c;
    }

    /// Number of distinct colors among `vertices`.
    pub fn distinct_on(&self, vertices: impl IntoIterator<Item = Vertex>) -> usize {
        let mut cs: Vec<Color> = vertices.into_iter().map(|v| self.0[v]).collect();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }

    /// Number of distinct colors over the whole id space.
    pub fn distinct(&self) -> usize {
        self.distinct_on(0..self.0.len())
    }
}

impl std::ops::Index<Vertex> for Coloring {
    type Output = Color;
    fn index(&self, v: Vertex) -> &Color {
        &self.0[v]
    }
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each edge's members. Fails on empty edges,
    /// repeated members or members outside `universe`.
    pub fn new(id_space: usize, mut universe: Vec<Vertex>, edges: Vec<HyperEdge>) -> Result<Self> {
        universe.sort_unstable();
        universe.dedup();
        if let Some(&v) = universe.iter().find(|&&v| v >= id_space) {
            return Err(Error::VertexOutOfRange { vertex: v, n: id_space });
        }
        let mut in_universe = vec![false; id_space];
        for &v in &universe {
            in_universe[v] = true;
        }
        let mut checked = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.members.sort_unstable();
            if e.members.is_empty() {
                return Err(Error::InvalidArgument(format!("edge {i} is empty")));
            }
            if e.members.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("edge {i} repeats a member")));
            }
            if let Some(&v) = e.members.iter().find(|&&v| v >= id_space || !in_universe[v]) {
                return Err(Error::InvalidArgument(format!(
                    "edge {i} member {v} lies outside the universe"
                )));
            }
            checked.push(e);
        }
        Ok(Self {
            id_space,
            universe,
            edges: checked,
        })
    }

    /// Shorthand for tests and small inputs: universe `0..n`, owners `0..`.
    pub fn from_member_lists(n: usize, lists: &[&[Vertex]]) -> Result<Self> {
        let edges = lists
            .iter()
            .enumerate()
            .map(|(i, l)| HyperEdge {
                owner: i,
                members: l.to_vec(),
            })
            .collect();
        Self::new(n, (0..n).collect(), edges)
    }

    pub fn id_space(&self) -> usize {
        self.id_space
    }

    pub fn universe(&self) -> &[Vertex] {
        &self.universe
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// For each id, the indices of the edges containing it (ascending).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.id_space];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in &e.members {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Max vertex degree, max intersection count and edge size range.
    /// Intersections are counted through incidence lists with a stamp array,
    /// `O(sum |e| * d_max)`.
    pub fn stats(&self) -> HypergraphStats {
        let inc = self.incidence();
        let max_vertex_degree = inc.iter().map(Vec::len).max().unwrap_or(0);
        let mut stamp = vec![usize::MAX; self.edges.len()];
        let mut max_intersections = 0;
        for (i, e) in self.edges.iter().enumerate() {
            let mut count = 0;
            stamp[i] = i;
            for &v in &e.members {
                for &j in &inc[v] {
                    if stamp[j] != i {
                        stamp[j] = i;
                        count += 1;
                    }
                }
            }
            max_intersections = max_intersections.max(count);
        }
        let sizes = self.edges.iter().map(|e| e.members.len());
        HypergraphStats {
            max_vertex_degree,
            max_intersections,
            min_edge_size: sizes.clone().min().unwrap_or(0),
            max_edge_size: sizes.max().unwrap_or(0),
        }
    }

    /// Index of the first edge without a uniquely colored member, or `None`
    /// when the coloring is conflict-free. Color 0 is treated like any other color.
    pub fn first_violation(&self, coloring: &Coloring) -> Result<Option<usize>> {
        if let Some(&v) = self.universe.iter().find(|&&v| v >= coloring.len()) {
            return Err(Error::IncompleteColoring {
                vertex: v,
                len: coloring.len(),
            });
        }
        let mut buf = Vec::new();
        Ok(self
            .edges
            .iter()
            .position(|e| !has_unique_color(&e.members, coloring, &mut buf)))
    }

    pub fn is_conflict_free(&self, coloring: &Coloring) -> Result<bool> {
        Ok(self.first_violation(coloring)?.is_none())
    }
}

/// Whether some color appears exactly once among `members`.
pub(crate) fn has_unique_color(members: &[Vertex], coloring: &Coloring, buf: &mut Vec<Color>) -> bool {
    buf.clear();
    buf.extend(members.iter().map(|&v| coloring.get(v)));
    buf.sort_unstable();
    let mut i = 0;
    while i < buf.len() {
        let mut j = i + 1;
        while j < buf.len() && buf[j] == buf[i] {
            j += 1;
        }
        if j - i == 1 {
            return true;
        }
        i = j;
    }
    false
}

/// Hypergraph on `base` with one edge `N(v) ∩ base` for every owner `v`.
pub fn build_nbr_hypergraph(g: &Graph, base: &[Vertex], owners: &[Vertex]) -> Result<Hypergraph> {
    let mask = g.mask_of(base);
    let mut edges = Vec::with_capacity(owners.len());
    for &v in owners {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        let members: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| mask[w]).collect();
        if members.is_empty() {
            return Err(Error::EmptyNeighborhood(v));
        }
        edges.push(HyperEdge { owner: v, members });
    }
    Hypergraph::new(g.n(), base.to_vec(), edges)
}

/// The open-neighborhood hypergraph of `g`: one edge `N(v)` per vertex.
pub fn open_neighborhood_hypergraph(g: &Graph) -> Result<Hypergraph> {
    let all: Vec<Vertex> = g.vertices().collect();
    build_nbr_hypergraph(g, &all, &all)
}
