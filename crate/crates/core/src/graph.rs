//! Simple undirected graphs, the line-graph operator and induced-star search.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Vertex;

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

/// Degree summary returned by [`Graph::stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub max_degree: usize,
    pub has_isolated: bool,
    pub edges: usize,
}

/// An induced `S_k`: `center` adjacent to every leaf, leaves pairwise non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Edge orientation and order do not matter;
    /// self-loops, repeated edges and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Self { adj, m })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&w| w <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            max_degree: self.max_degree(),
            has_isolated: self.adj.iter().any(Vec::is_empty),
            edges: self.m,
        }
    }

    pub fn first_isolated(&self) -> Option<Vertex> {
        self.adj.iter().position(Vec::is_empty)
    }

    /// Removes isolated vertices. Returns the compacted graph and, for each new
    /// vertex, its id in `self`.
    pub fn strip_isolated(&self) -> (Graph, Vec<Vertex>) {
        let kept: Vec<Vertex> = self.vertices().filter(|&v| self.degree(v) > 0).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = kept
            .iter()
            .map(|&v| self.adj[v].iter().map(|&w| new_id[w]).collect())
            .collect();
        (Graph { adj, m: self.m }, kept)
    }

    /// Degree of `v` inside the subgraph induced by `mask`.
    pub fn induced_degree(&self, v: Vertex, mask: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&w| mask[w]).count()
    }

    /// True when no edge has both endpoints in `set`.
    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        self.find_edge_within(set).is_none()
    }

    /// Some edge with both endpoints in `set`, if any.
    pub fn find_edge_within(&self, set: &[Vertex]) -> Option<(Vertex, Vertex)> {
        let mask = self.mask_of(set);
        set.iter()
            .find_map(|&u| self.adj[u].iter().find(|&&w| mask[w]).map(|&w| (u.min(w), u.max(w))))
    }

    pub fn mask_of(&self, set: &[Vertex]) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for &v in set {
            mask[v] = true;
        }
        mask
    }

    /// Line graph: one vertex per edge of `self` in lexicographic edge order.
    /// The returned map sends each line-graph vertex to the edge it represents.
    pub fn line_graph(&self) -> Result<(Graph, Vec<(Vertex, Vertex)>)> {
        if self.m == 0 {
            return Err(Error::Edgeless);
        }
        let edge_map: Vec<(Vertex, Vertex)> = self.edges().collect();
        // incident[v] lists the line vertices (edge indices) touching v
        let mut incident = vec![Vec::new(); self.n()];
        for (i, &(u, v)) in edge_map.iter().enumerate() {
            incident[u].push(i);
            incident[v].push(i);
        }
        let mut adj: Vec<Vec<Vertex>> = edge_map
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                incident[u]
                    .iter()
                    .chain(&incident[v])
                    .copied()
                    .filter(|&j| j != i)
                    .collect()
            })
            .collect();
        let mut m = 0;
        for list in &mut adj {
            // in a simple graph two distinct edges share at most one endpoint
            list.sort_unstable();
            m += list.len();
        }
        Ok((Graph { adj, m: m / 2 }, edge_map))
    }

    /// Searches for an induced `S_k`. Returns the lexicographically least witness
    /// (by center, then by sorted leaf sequence), or `None` when the graph is
    /// `S_k`-free.
    ///
    /// Each open neighborhood is searched for an independent `k`-set by
    /// backtracking over bitsets, so the worst case is `O(n * C(Δ, k))`. That is
    /// fine for `k <= 6` and degrees up to a few hundred.
    pub fn find_induced_star(&self, k: usize) -> Result<Option<StarWitness>> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("star size k = {k} must be >= 2")));
        }
        for center in self.vertices() {
            let nbrs = &self.adj[center];
            if nbrs.len() < k {
                continue;
            }
            let local = LocalBits::new(self, nbrs);
            let mut chosen = Vec::with_capacity(k);
            if local.independent_set(k, &mut chosen) {
                return Ok(Some(StarWitness {
                    center,
                    leaves: chosen.into_iter().map(|i| nbrs[i]).collect(),
                }));
            }
        }
        Ok(None)
    }

    pub fn is_sk_free(&self, k: usize) -> Result<bool> {
        Ok(self.find_induced_star(k)?.is_none())
    }

    /// Checks a witness against the graph directly.
    pub fn validates_star(&self, w: &StarWitness, k: usize) -> bool {
        w.leaves.len() == k
            && w.leaves.iter().all(|&l| l != w.center && self.has_edge(w.center, l))
            && w.leaves
                .iter()
                .enumerate()
                .all(|(i, &a)| w.leaves[i + 1..].iter().all(|&b| a != b && !self.has_edge(a, b)))
    }
}

/// Adjacency of one open neighborhood as bitsets over its local indices.
struct LocalBits {
    words: usize,
    // non_adj[i] has bit j set iff local vertices i and j are distinct and non-adjacent
    non_adj: Vec<Vec<u64>>,
}

impl LocalBits {
    fn new(g: &Graph, nbrs: &[Vertex]) -> Self {
        let d = nbrs.len();
        let words = d.div_ceil(64);
        let mut non_adj = vec![vec![0u64; words]; d];
        for (i, &a) in nbrs.iter().enumerate() {
            let row = &mut non_adj[i];
            for j in 0..d {
                if j != i {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            // clear neighbors of a; both lists are sorted so merge
            let (mut p, mut q) = (0, 0);
            let na = &g.adj[a];
            while p < na.len() && q < d {
                match na[p].cmp(&nbrs[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        row[q / 64] &= !(1 << (q % 64));
                        p += 1;
                        q += 1;
                    }
                }
            }
        }
        Self { words, non_adj }
    }

    fn independent_set(&self, k: usize, chosen: &mut Vec<usize>) -> bool {
        let d = self.non_adj.len();
        let mut all = vec![0u64; self.words];
        for j in 0..d {
            all[j / 64] |= 1 << (j % 64);
        }
        self.extend(&all, k, chosen)
    }

    // candidates in ascending order give the lexicographically least set first
    fn extend(&self, candidates: &[u64], k: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        let avail: u32 = candidates.iter().map(|w| w.count_ones()).sum();
        if (avail as usize) < k - chosen.len() {
            return false;
        }
        for (wi, &word) in candidates.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let i = wi * 64 + b;
                // later candidates only, so each set is visited once in sorted order
                let next: Vec<u64> = candidates
                    .iter()
                    .zip(&self.non_adj[i])
                    .enumerate()
                    .map(|(w, (&c, &na))| {
                        let keep_above = if w < wi {
                            0
                        } else if w == wi {
                            if b == 63 {
                                0
                            } else {
                                !((1u64 << (b + 1)) - 1)
                            }
                        } else {
                            u64::MAX
                        };
                        c & na & keep_above
                    })
                    .collect();
                chosen.push(i);
                if self.extend(&next, k, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn stats_examples() {
        let s = complete(4).stats();
        assert_eq!((s.max_degree, s.has_isolated, s.edges), (3, false, 6));
        let s = Graph::empty(1).stats();
        assert_eq!((s.max_degree, s.has_isolated, s.edges), (0, true, 0));
        let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let s = star.stats();
        assert_eq!((s.max_degree, s.has_isolated, s.edges), (4, false, 4));
    }

    #[test]
    fn line_graph_examples() {
        let (l, map) = path(3).line_graph().unwrap();
        assert_eq!((l.n(), l.m()), (2, 1));
        assert_eq!(map, vec![(0, 1), (1, 2)]);

        let (l, _) = complete(3).line_graph().unwrap();
        assert_eq!(l, complete(3));

        let (l, _) = complete(4).line_graph().unwrap();
        assert_eq!((l.n(), l.m()), (6, 12));
        assert!(l.vertices().all(|v| l.degree(v) == 4));

        assert_eq!(Graph::empty(3).line_graph(), Err(Error::Edgeless));
    }

    #[test]
    fn line_graph_matches_definition() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (2, 5)]).unwrap();
        let (l, map) = g.line_graph().unwrap();
        for i in 0..map.len() {
            for j in 0..map.len() {
                let (a, b) = map[i];
                let (c, d) = map[j];
                let share = i != j && (a == c || a == d || b == c || b == d);
                assert_eq!(l.has_edge(i, j), share, "{:?} {:?}", map[i], map[j]);
            }
        }
    }

    #[test]
    fn star_search_examples() {
        let claw = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let w = claw.find_induced_star(3).unwrap().unwrap();
        assert_eq!(
            w,
            StarWitness {
                center: 0,
                leaves: vec![1, 2, 3]
            }
        );
        assert!(claw.validates_star(&w, 3));

        assert!(cycle(5).is_sk_free(3).unwrap());
        assert!(!cycle(5).is_sk_free(2).unwrap());
        assert!(complete(6).is_sk_free(2).unwrap());
        assert!(matches!(cycle(5).find_induced_star(1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn star_witness_is_lexicographically_least() {
        // center 0 has neighbors 1..=5 with 1-2 adjacent: least independent 3-set is {1,3,4}
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2)]).unwrap();
        let w = g.find_induced_star(3).unwrap().unwrap();
        assert_eq!(w.leaves, vec![1, 3, 4]);
    }

    #[test]
    fn star_search_wide_neighborhood() {
        // 130 leaves: exercises multi-word bitsets
        let g = Graph::from_edges(131, (1..131).map(|i| (0, i))).unwrap();
        let w = g.find_induced_star(5).unwrap().unwrap();
        assert_eq!(w.leaves, vec![1, 2, 3, 4, 5]);
        let (l, _) = g.line_graph().unwrap();
        assert!(l.is_sk_free(2).unwrap());
    }

    #[test]
    fn strip_isolated_compacts() {
        let g = Graph::from_edges(5, [(1, 3)]).unwrap();
        let (h, ids) = g.strip_isolated();
        assert_eq!(ids, vec![1, 3]);
        assert_eq!(h, Graph::from_edges(2, [(0, 1)]).unwrap());
    }
}
