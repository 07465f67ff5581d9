//! Las Vegas conflict-free coloring for hypergraphs with large edges.
//!
//! Each vertex draws a *level* `l` in `1..=L` with `Pr[l] = 2^-l` for `l < L`
//! and `Pr[L] = 2^-(L-1)`, then a uniform color from level `l`'s private block
//! of `C_level` colors. An edge of size `s` has expected occupancy around 1 at
//! level `log2 s`, which is where a singleton color tends to appear.
//!
//! While some edge has no uniquely colored member, all members of the
//! lowest-index such edge are resampled. After `budget_factor * |E| * (Γ + 2)`
//! resamples without success, `beta` doubles, the palettes are rebuilt and the
//! run restarts on a fresh stream. The returned coloring is always re-checked.
//!
//! # Randomness
//!
//! Attempt `a` (0 for the first run, `a` after `a` escalations) draws from
//! `ChaCha8Rng::seed_from_u64(seed)` with its stream set to `a`. Universe
//! vertices are sampled in ascending order at the start of an attempt and then
//! per resample in ascending member order. For each draw the level is decided
//! by successive `gen::<bool>()` coin flips, then the offset by
//! `gen_range(0..C_level)`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{has_unique_color, Coloring, Hypergraph};
use crate::Color;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RandomColorConfig {
    /// Scale of the per-level palette.
    pub beta: f64,
    /// Resamples allowed per `edge * (Γ + 2)` before escalating.
    pub budget_factor: u64,
    pub max_escalations: u32,
    pub seed: u64,
}

impl Default for RandomColorConfig {
    fn default() -> Self {
        Self {
            beta: 2.0,
            budget_factor: 64,
            max_escalations: 8,
            seed: 0,
        }
    }
}

impl RandomColorConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// `t` and `Γ` chosen for a hypergraph; `2t - 1` never exceeds the smallest edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub t: usize,
    pub gamma: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RunStats {
    pub resamples: u64,
    pub escalations: u32,
    pub levels: usize,
    pub colors_per_level: usize,
    /// `levels * colors_per_level` of the final attempt.
    pub palette_size: usize,
    pub colors_used: usize,
    pub beta: f64,
}

/// Measured `Γ` and the largest `t` with `2t - 1 <= s_min`.
pub fn choose_parameters(h: &Hypergraph) -> Result<Parameters> {
    if h.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    let s = h.stats();
    Ok(Parameters {
        t: s.min_edge_size.div_ceil(2).max(1),
        gamma: s.max_intersections,
    })
}

/// Number of levels: `max(t, ceil(log2 s_max) + 1)`.
pub fn level_count(t: usize, max_edge_size: usize) -> usize {
    let ceil_log2 = if max_edge_size <= 1 {
        0
    } else {
        (usize::BITS - (max_edge_size - 1).leading_zeros()) as usize
    };
    t.max(ceil_log2 + 1)
}

/// Colors per level: `ceil(beta * (Γ + 1)^(1/t) * ln(Γ + 2))`.
pub fn colors_per_level(beta: f64, t: usize, gamma: usize) -> usize {
    let g = gamma as f64;
    let raw = beta * (g + 1.0).powf(1.0 / t as f64) * (g + 2.0).ln();
    (raw.ceil() as usize).max(1)
}

struct Sampler {
    levels: usize,
    per_level: usize,
}

impl Sampler {
    fn draw(&self, rng: &mut ChaCha8Rng) -> Color {
        let mut level = 1;
        while level < self.levels && rng.gen::<bool>() {
            level += 1;
        }
        ((level - 1) * self.per_level + rng.gen_range(0..self.per_level) + 1) as Color
    }
}

/// Conflict-free coloring of `h` with at most `levels * colors_per_level`
/// colors. Ids outside the universe stay 0.
pub fn cf_color_random(
    h: &Hypergraph,
    t: usize,
    gamma: usize,
    cfg: &RandomColorConfig,
) -> Result<(Coloring, RunStats)> {
    if !(cfg.beta > 0.0 && cfg.beta.is_finite()) {
        return Err(Error::InvalidArgument(format!("beta = {} must be positive", cfg.beta)));
    }
    if cfg.budget_factor < 1 {
        return Err(Error::InvalidArgument("budget_factor must be >= 1".into()));
    }
    if t < 1 {
        return Err(Error::InvalidArgument("t must be >= 1".into()));
    }
    let mut coloring = Coloring::blank(h.id_space());
    if h.edge_count() == 0 {
        for &v in h.universe() {
            coloring.set(v, 1);
        }
        let used = usize::from(!h.universe().is_empty());
        let stats = RunStats {
            levels: 1,
            colors_per_level: 1,
            palette_size: 1,
            colors_used: used,
            beta: cfg.beta,
            ..RunStats::default()
        };
        return Ok((coloring, stats));
    }
    let hs = h.stats();
    if hs.min_edge_size < 2 * t - 1 {
        return Err(Error::InvalidArgument(format!(
            "edge of size {} is below 2t - 1 = {}",
            hs.min_edge_size,
            2 * t - 1
        )));
    }

    let inc = h.incidence();
    let edges = h.edges();
    let levels = level_count(t, hs.max_edge_size);
    let budget = cfg
        .budget_factor
        .saturating_mul(edges.len() as u64)
        .saturating_mul(gamma as u64 + 2);
    let mut stats = RunStats {
        levels,
        beta: cfg.beta,
        ..RunStats::default()
    };
    let mut buf = Vec::new();
    let mut stamp = vec![usize::MAX; edges.len()];
    let mut tick = 0usize;

    for attempt in 0..=cfg.max_escalations {
        let sampler = Sampler {
            levels,
            per_level: colors_per_level(stats.beta, t, gamma),
        };
        stats.colors_per_level = sampler.per_level;
        stats.palette_size = levels * sampler.per_level;

        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(attempt as u64);
        for &v in h.universe() {
            coloring.set(v, sampler.draw(&mut rng));
        }
        let mut violated: BTreeSet<usize> = (0..edges.len())
            .filter(|&e| !has_unique_color(&edges[e].members, &coloring, &mut buf))
            .collect();

        let mut spent = 0u64;
        while let Some(&e) = violated.first() {
            if spent == budget {
                break;
            }
            spent += 1;
            for &v in &edges[e].members {
                coloring.set(v, sampler.draw(&mut rng));
            }
            tick = tick.wrapping_add(1);
            for &v in &edges[e].members {
                for &f in &inc[v] {
                    if stamp[f] == tick {
                        continue;
                    }
                    stamp[f] = tick;
                    if has_unique_color(&edges[f].members, &coloring, &mut buf) {
                        violated.remove(&f);
                    } else {
                        violated.insert(f);
                    }
                }
            }
        }
        stats.resamples += spent;

        if violated.is_empty() {
            if h.first_violation(&coloring)?.is_some() {
                return Err(Error::Invariant("random coloring failed its final check".into()));
            }
            stats.colors_used = coloring.distinct_on(h.universe().iter().copied());
            assert!(h
                .universe()
                .iter()
                .all(|&v| (1..=stats.palette_size as Color).contains(&coloring[v])));
            return Ok((coloring, stats));
        }
        if attempt < cfg.max_escalations {
            stats.escalations += 1;
            stats.beta *= 2.0;
        }
    }
    Err(Error::EscalationLimit(Box::new(stats)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Family;
    use crate::hypergraph::open_neighborhood_hypergraph;

    #[test]
    fn parameter_choice() {
        let five = Hypergraph::from_member_lists(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        assert_eq!(choose_parameters(&five).unwrap(), Parameters { t: 3, gamma: 0 });
        let one = Hypergraph::from_member_lists(2, &[&[0], &[0, 1]]).unwrap();
        assert_eq!(choose_parameters(&one).unwrap(), Parameters { t: 1, gamma: 1 });
        let none = Hypergraph::from_member_lists(2, &[]).unwrap();
        assert_eq!(choose_parameters(&none), Err(Error::Edgeless));
    }

    #[test]
    fn palette_formulas() {
        assert_eq!(level_count(3, 5), 4);
        assert_eq!(level_count(3, 4), 3);
        assert_eq!(level_count(1, 1), 1);
        assert_eq!(level_count(2, 256), 9);
        // 2 * 1 * ln 2 = 1.386
        assert_eq!(colors_per_level(2.0, 3, 0), 2);
        // 2 * 9^(1/2) * ln 10 = 13.8155
        assert_eq!(colors_per_level(2.0, 2, 8), 14);
    }

    #[test]
    fn edgeless_is_all_ones() {
        let h = Hypergraph::from_member_lists(3, &[]).unwrap();
        let (c, s) = cf_color_random(&h, 1, 0, &RandomColorConfig::default()).unwrap();
        assert_eq!(c.as_slice(), &[1, 1, 1]);
        assert_eq!(s.resamples, 0);
    }

    #[test]
    fn single_large_edge() {
        let h = Hypergraph::from_member_lists(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let cfg = RandomColorConfig::with_seed(11);
        let (c, s) = cf_color_random(&h, 3, 0, &cfg).unwrap();
        assert_eq!(h.first_violation(&c), Ok(None));
        assert_eq!(s.palette_size, 4 * 2);
        assert!(c.distinct() <= s.palette_size);
    }

    #[test]
    fn petersen_neighborhoods() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = crate::graph::Graph::from_edges(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>()).unwrap();
        let h = open_neighborhood_hypergraph(&g).unwrap();
        let p = choose_parameters(&h).unwrap();
        assert_eq!(p, Parameters { t: 2, gamma: 6 });
        for seed in 0..20 {
            let (c, s) = cf_color_random(&h, p.t, p.gamma, &RandomColorConfig::with_seed(seed)).unwrap();
            assert_eq!(h.first_violation(&c), Ok(None));
            assert!(s.colors_used <= s.palette_size);
        }
    }

    #[test]
    fn same_seed_same_coloring() {
        let g = Family::LineComplete(7).generate(None).unwrap();
        let h = open_neighborhood_hypergraph(&g).unwrap();
        let p = choose_parameters(&h).unwrap();
        let cfg = RandomColorConfig::with_seed(5);
        let a = cf_color_random(&h, p.t, p.gamma, &cfg).unwrap();
        let b = cf_color_random(&h, p.t, p.gamma, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_edges_below_two_t_minus_one() {
        let h = Hypergraph::from_member_lists(3, &[&[0, 1]]).unwrap();
        assert!(matches!(
            cf_color_random(&h, 2, 0, &RandomColorConfig::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn escalation_limit_reports_stats() {
        // pair edges give two levels of one color each: a triangle of pairs
        // needs a proper 2-coloring of K_3, so every attempt exhausts its budget
        let h = Hypergraph::from_member_lists(3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        let cfg = RandomColorConfig {
            beta: 1e-9,
            budget_factor: 1,
            max_escalations: 2,
            seed: 0,
        };
        match cf_color_random(&h, 1, 0, &cfg) {
            Err(Error::EscalationLimit(stats)) => {
                assert_eq!(stats.escalations, 2);
                assert_eq!(stats.palette_size, 2);
                assert_eq!(stats.resamples, 3 * (3 * 2));
            }
            other => panic!("expected escalation failure, got {other:?}"),
        }
    }
}
