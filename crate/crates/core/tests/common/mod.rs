//! Test-only oracles and instance generators, written independently of the
//! library's search and checking code.

#![allow(dead_code)]

use cfon_core::generators::Family;
use cfon_core::{Coloring, Graph, HyperEdge, Hypergraph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Conflict-free check by counting every color with nested loops.
pub fn naive_cf_ok(members: &[Vertex], colors: &[u32]) -> bool {
    members
        .iter()
        .any(|&v| members.iter().filter(|&&w| colors[w] == colors[v]).count() == 1)
}

pub fn naive_cfon_ok(g: &Graph, colors: &[u32]) -> bool {
    g.vertices().all(|v| naive_cf_ok(g.neighbors(v), colors))
}

/// Smallest `c` such that some coloring in `{1..c}^n` is CFON, by plain
/// enumeration of all `c^n` assignments.
pub fn brute_force_chi(g: &Graph) -> usize {
    let n = g.n();
    for c in 1..=n.max(1) {
        let total = (c as u64).pow(n as u32);
        let mut colors = vec![1u32; n];
        for code in 0..total {
            let mut x = code;
            for slot in colors.iter_mut() {
                *slot = (x % c as u64) as u32 + 1;
                x /= c as u64;
            }
            if naive_cfon_ok(g, &colors) {
                return c;
            }
        }
    }
    unreachable!("n colors always suffice")
}

/// Random graph on `n` vertices without isolated vertices.
pub fn random_connected_ish(n: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let mut deg = vec![0; n];
    for &(u, v) in &edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    for u in 0..n {
        if deg[u] == 0 {
            let mut v = r.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            if !edges.contains(&(u.min(v), u.max(v))) {
                edges.push((u.min(v), u.max(v)));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random hypergraph on `0..n` whose vertex degrees never exceed `cap`.
pub fn random_bounded_hypergraph(
    n: usize,
    edges: usize,
    max_size: usize,
    cap: usize,
    r: &mut ChaCha8Rng,
) -> Hypergraph {
    let mut deg = vec![0usize; n];
    let mut list = Vec::new();
    for owner in 0..edges {
        let size = r.gen_range(1..=max_size.min(n));
        let mut members: Vec<Vertex> = rand::seq::index::sample(r, n, size).into_vec();
        members.retain(|&v| deg[v] < cap);
        if members.is_empty() {
            continue;
        }
        members.sort_unstable();
        for &v in &members {
            deg[v] += 1;
        }
        list.push(HyperEdge { owner, members });
    }
    Hypergraph::new(n, (0..n).collect(), list).unwrap()
}

/// Random hypergraph whose edges all have size at least `min_size`.
pub fn random_wide_hypergraph(
    n: usize,
    edges: usize,
    min_size: usize,
    max_size: usize,
    r: &mut ChaCha8Rng,
) -> Hypergraph {
    let list = (0..edges)
        .map(|owner| {
            let size = r.gen_range(min_size..=max_size);
            let mut members: Vec<Vertex> = rand::seq::index::sample(r, n, size).into_vec();
            members.sort_unstable();
            HyperEdge { owner, members }
        })
        .collect();
    Hypergraph::new(n, (0..n).collect(), list).unwrap()
}

/// Greedy maximal independent set in ascending id order.
pub fn maximal_independent_set(g: &Graph) -> Vec<Vertex> {
    let mut blocked = vec![false; g.n()];
    let mut set = Vec::new();
    for v in g.vertices() {
        if !blocked[v] {
            set.push(v);
            blocked[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    set
}

/// Whether `v` sees a color exactly once among its neighbors.
pub fn sees_unique(g: &Graph, v: Vertex, c: &Coloring) -> bool {
    naive_cf_ok(g.neighbors(v), c.as_slice())
}

pub fn gen(f: Family, seed: u64) -> Graph {
    f.generate(Some(seed)).unwrap()
}

pub fn ceil_log2(x: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < x {
        k += 1;
    }
    k
}
