//! Degree-peeling CFON coloring for `S_k`-free graphs.
//!
//! Starting from `V_0 = V`, round `i` takes the max degree `Δ_{i-1}` of the
//! subgraph induced by `V_{i-1}` and moves every vertex whose induced degree
//! exceeds `log2 Δ_{i-1}` into `U_i`. The hypergraph `H_i` on `V_{i-1}` with one
//! edge `N(v) ∩ V_{i-1}` per `v ∈ U_i` is conflict-free colored, which gives
//! every vertex of `U_i` a uniquely colored neighbor in layer `i`. Peeling stops
//! once `V_r` induces no edges; the vertices of `V_r` are then served by a
//! finishing layer on `V \ V_r` (at most `k` colors when the graph is
//! `S_k`-free). The final color of a vertex is its tuple of layer colors, with
//! 0 wherever a layer does not reach it, relabeled densely.
//!
//! Each `U_i` vertex keeps its unique color under the product: its neighbors
//! outside `V_{i-1}` carry 0 in layer `i`, which no colorer ever hands out.
//!
//! Since survivors of a round have induced degree at most `log2 Δ`, the
//! induced max degree falls as `Δ → floor(log2 Δ)` and the round count stays
//! within `log*(Δ) + 1`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::greedy::{cf_color_bounded_degree, lemma3_color_with_hypergraph};
use crate::hypergraph::{build_nbr_hypergraph, Coloring};
use crate::random::{cf_color_random, choose_parameters, RandomColorConfig};
use crate::{Color, Vertex};

/// Rounds whose hypergraph has vertex degree at most this use the greedy colorer.
pub const SMALL_DEGREE_CUTOFF: usize = 16;

const ROUND_SEED_STEP: u64 = 0x9E37_79B9_7F4A_7C15;

/// One peeling step: `high` (= `U_i`) is split off `prev` (= `V_{i-1}`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelSplit {
    pub prev: Vec<Vertex>,
    pub high: Vec<Vertex>,
    pub delta_induced: usize,
    /// `log2 delta_induced`, or 0 when `delta_induced <= 1`.
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelPartition {
    pub rounds: Vec<PeelSplit>,
    /// `V_r`; independent in the graph.
    pub final_independent: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Colorer {
    Greedy,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundRecord {
    #[serde(flatten)]
    pub split: PeelSplit,
    pub colorer: Colorer,
    /// `t` from the measured smallest edge (random rounds only).
    pub t: Option<usize>,
    pub gamma_measured: usize,
    /// `log2(Δ_{i-1}) / 2 + 1`, the analytic choice of `t`.
    pub t_analytic: f64,
    /// `Δ_{i-1}^2`, the analytic bound on `Γ`.
    pub gamma_analytic: u64,
    pub max_vertex_degree: usize,
    pub min_edge_size: usize,
    pub palette_size: usize,
    pub colors_used: usize,
    pub resamples: u64,
    pub escalations: u32,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinishRecord {
    pub max_vertex_degree: usize,
    pub palette_size: usize,
    pub colors_used: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeelTrace {
    pub k: usize,
    pub delta: usize,
    pub rounds: Vec<RoundRecord>,
    pub r: usize,
    pub final_independent: Vec<Vertex>,
    pub finish: Option<FinishRecord>,
    /// `k` (or 1 without a finishing layer) times the product of round palette
    /// sizes; `None` on `u128` overflow.
    pub product_space: Option<u128>,
    /// Exact count of attainable layer tuples, blanks included.
    pub tuple_space: Option<u128>,
    pub distinct_final: usize,
    pub resamples: u64,
}

/// Per-layer colorings, each total over `V(G)` with 0 outside its domain.
#[derive(Debug, Clone, PartialEq)]
pub struct LayeredColoring {
    pub layers: Vec<Coloring>,
    /// Whether the last layer is the finishing layer on `V \ V_r`.
    pub has_finish: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOptions {
    pub k: usize,
    /// Reject inputs that contain an induced `S_k`.
    pub check_free: bool,
    pub random: RandomColorConfig,
}

impl PipelineOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            check_free: false,
            random: RandomColorConfig::with_seed(seed),
        }
    }
}

/// Number of `log2` applications that bring `x` down to at most 1.
pub fn iterated_log2(x: f64) -> usize {
    let mut x = x;
    let mut count = 0;
    while x > 1.0 {
        x = x.log2();
        count += 1;
    }
    count
}

fn threshold(delta: usize) -> f64 {
    if delta <= 1 {
        0.0
    } else {
        (delta as f64).log2()
    }
}

/// Computes the `U_i` / `V_i` sets only.
pub fn peel_partition(g: &Graph) -> Result<PeelPartition> {
    if let Some(v) = g.first_isolated() {
        return Err(Error::IsolatedVertex(v));
    }
    let mut alive = vec![true; g.n()];
    let mut current: Vec<Vertex> = g.vertices().collect();
    let mut rounds = Vec::new();
    loop {
        let degrees: Vec<usize> = current.iter().map(|&v| g.induced_degree(v, &alive)).collect();
        let delta = degrees.iter().copied().max().unwrap_or(0);
        if delta == 0 {
            break;
        }
        let tau = threshold(delta);
        let (high, rest): (Vec<_>, Vec<_>) = current.iter().zip(&degrees).partition(|&(_, &d)| d as f64 > tau);
        let high: Vec<Vertex> = high.into_iter().map(|(&v, _)| v).collect();
        let rest: Vec<Vertex> = rest.into_iter().map(|(&v, _)| v).collect();
        for &v in &high {
            alive[v] = false;
        }
        rounds.push(PeelSplit {
            prev: std::mem::replace(&mut current, rest),
            high,
            delta_induced: delta,
            threshold: tau,
        });
    }
    Ok(PeelPartition {
        rounds,
        final_independent: current,
    })
}

/// Colors every layer and records the trace. The final coloring is
/// [`product_compact`] of the returned layers.
pub fn color_layers(g: &Graph, opts: &PipelineOptions) -> Result<(LayeredColoring, PeelTrace)> {
    if opts.k < 2 {
        return Err(Error::InvalidArgument(format!("k = {} must be >= 2", opts.k)));
    }
    if let Some(v) = g.first_isolated() {
        return Err(Error::IsolatedVertex(v));
    }
    if opts.check_free {
        if let Some(w) = g.find_induced_star(opts.k)? {
            return Err(Error::NotStarFree {
                k: opts.k,
                center: w.center,
                leaves: w.leaves,
            });
        }
    }
    let partition = peel_partition(g)?;
    let mut layers = Vec::with_capacity(partition.rounds.len() + 1);
    let mut records = Vec::with_capacity(partition.rounds.len());

    for (i, split) in partition.rounds.into_iter().enumerate() {
        let h = build_nbr_hypergraph(g, &split.prev, &split.high)?;
        let stats = h.stats();
        let delta = split.delta_induced;
        let mut record = RoundRecord {
            colorer: Colorer::Greedy,
            t: None,
            gamma_measured: stats.max_intersections,
            t_analytic: threshold(delta) / 2.0 + 1.0,
            gamma_analytic: (delta as u64).pow(2),
            max_vertex_degree: stats.max_vertex_degree,
            min_edge_size: stats.min_edge_size,
            palette_size: 0,
            colors_used: 0,
            resamples: 0,
            escalations: 0,
            seed: None,
            split,
        };
        let layer = if stats.max_vertex_degree <= SMALL_DEGREE_CUTOFF || stats.min_edge_size < 3 {
            record.palette_size = stats.max_vertex_degree + 1;
            cf_color_bounded_degree(&h)
        } else {
            let params = choose_parameters(&h)?;
            let cfg = RandomColorConfig {
                seed: round_seed(opts.random.seed, i + 1),
                ..opts.random
            };
            let (layer, run) = cf_color_random(&h, params.t, params.gamma, &cfg)?;
            record.colorer = Colorer::Random;
            record.t = Some(params.t);
            record.palette_size = run.palette_size;
            record.resamples = run.resamples;
            record.escalations = run.escalations;
            record.seed = Some(cfg.seed);
            layer
        };
        if let Some(e) = h.first_violation(&layer)? {
            return Err(Error::Invariant(format!(
                "round {}: vertex {} has no uniquely colored neighbor in its layer",
                i + 1,
                h.edges()[e].owner
            )));
        }
        record.colors_used = layer.distinct_on(record.split.prev.iter().copied());
        layers.push(layer);
        records.push(record);
    }

    let final_independent = partition.final_independent;
    let finish = if final_independent.is_empty() {
        None
    } else {
        let (layer, h) = lemma3_color_with_hypergraph(g, &final_independent)?;
        let d = h.stats().max_vertex_degree;
        let colors_used = layer.distinct_on(h.universe().iter().copied());
        layers.push(layer);
        Some(FinishRecord {
            max_vertex_degree: d,
            palette_size: d + 1,
            colors_used,
        })
    };

    let product_space = records
        .iter()
        .try_fold(if finish.is_some() { opts.k as u128 } else { 1 }, |acc, r| {
            acc.checked_mul(r.palette_size as u128)
        });
    let tuple_space = tuple_space(&records, finish.as_ref());
    let layered = LayeredColoring {
        layers,
        has_finish: finish.is_some(),
    };
    let trace = PeelTrace {
        k: opts.k,
        delta: g.max_degree(),
        r: records.len(),
        resamples: records.iter().map(|r| r.resamples).sum(),
        rounds: records,
        final_independent,
        finish,
        product_space,
        tuple_space,
        distinct_final: 0,
    };
    debug_assert!(trace.r <= iterated_log2(trace.delta as f64) + 2);
    Ok((layered, trace))
}

// Upper bound on distinct layer tuples: a vertex of U_i is blank in layers
// after i, a vertex of V_r is blank in the finishing layer.
fn tuple_space(records: &[RoundRecord], finish: Option<&FinishRecord>) -> Option<u128> {
    let f = finish.map_or(1, |f| f.palette_size as u128);
    let mut prefix: u128 = 1;
    let mut total: u128 = 0;
    for r in records {
        prefix = prefix.checked_mul(r.palette_size as u128)?;
        total = total.checked_add(prefix.checked_mul(f)?)?;
    }
    if finish.is_some() {
        total = total.checked_add(prefix)?;
    }
    Some(total)
}

fn round_seed(seed: u64, round: usize) -> u64 {
    seed.wrapping_add(ROUND_SEED_STEP.wrapping_mul(round as u64))
}

/// Full pipeline: layered coloring combined by [`product_compact`].
///
/// Round `i` (1-based) of the random colorer runs with seed
/// `seed + i * 0x9E3779B97F4A7C15` (wrapping).
pub fn cfon_color_skfree(g: &Graph, opts: &PipelineOptions) -> Result<(Coloring, PeelTrace)> {
    let (layered, mut trace) = color_layers(g, opts)?;
    let coloring = product_compact(&layered.layers, g.n());
    trace.distinct_final = coloring.distinct();
    if let Some(v) = crate::exact::first_cfon_violation(g, &coloring)? {
        return Err(Error::Invariant(format!(
            "product coloring leaves vertex {v} without a unique neighbor color"
        )));
    }
    Ok((coloring, trace))
}

/// Combines layers into one coloring: equal tuples share a color, distinct
/// tuples differ. Colors are `1..=N` in order of first appearance by vertex id.
pub fn product_compact(layers: &[Coloring], n: usize) -> Coloring {
    let mut ids: HashMap<Vec<Color>, Color> = HashMap::new();
    let colors = (0..n)
        .map(|v| {
            let tuple: Vec<Color> = layers.iter().map(|l| l.get(v)).collect();
            let next = ids.len() as Color + 1;
            *ids.entry(tuple).or_insert(next)
        })
        .collect();
    Coloring::new(colors)
}
