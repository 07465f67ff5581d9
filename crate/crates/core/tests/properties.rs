mod common;

use cfon_core::exact::{self, cf_hypergraph_exact, chi_on_exact, ChiResult, Feasibility};
use cfon_core::generators::Family;
use cfon_core::greedy::cf_color_bounded_degree;
use cfon_core::hypergraph::{build_nbr_hypergraph, open_neighborhood_hypergraph};
use cfon_core::io::{parse_graph, write_graph};
use cfon_core::lower_bounds::{check_line_clique_lb, edge_coloring_from_line, LineCliqueCheck};
use cfon_core::pipeline::{color_layers, iterated_log2, product_compact};
use cfon_core::random::{cf_color_random, choose_parameters};
use cfon_core::{Coloring, Graph, Hypergraph, PipelineOptions, RandomColorConfig};
use proptest::prelude::*;

use common::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn arb_hypergraph_and_coloring() -> impl Strategy<Value = (Hypergraph, Coloring)> {
    (1usize..12).prop_flat_map(|n| {
        let edge = proptest::collection::btree_set(0..n, 1..=n);
        (
            proptest::collection::vec(edge, 0..8),
            proptest::collection::vec(0u32..4, n),
        )
            .prop_map(move |(edges, colors)| {
                let lists: Vec<Vec<usize>> = edges.into_iter().map(|s| s.into_iter().collect()).collect();
                let refs: Vec<&[usize]> = lists.iter().map(Vec::as_slice).collect();
                (Hypergraph::from_member_lists(n, &refs).unwrap(), Coloring::new(colors))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn line_graphs_are_claw_free(g in arb_graph(9)) {
        if g.m() == 0 {
            prop_assert_eq!(g.line_graph(), Err(cfon_core::Error::Edgeless));
            return Ok(());
        }
        let (l, map) = g.line_graph().unwrap();
        prop_assert_eq!(l.n(), g.m());
        prop_assert_eq!(map.len(), g.m());
        prop_assert!(l.is_sk_free(3).unwrap());
    }

    #[test]
    fn star_witnesses_revalidate(g in arb_graph(10), k in 2usize..5) {
        if let Some(w) = g.find_induced_star(k).unwrap() {
            prop_assert!(g.validates_star(&w, k));
        } else {
            // no vertex has k pairwise non-adjacent neighbors, checked by enumeration
            for v in g.vertices() {
                let nb = g.neighbors(v);
                let d = nb.len();
                for mask in 0u32..(1 << d) {
                    if mask.count_ones() as usize != k { continue; }
                    let pick: Vec<_> = (0..d).filter(|i| mask >> i & 1 == 1).map(|i| nb[i]).collect();
                    prop_assert!(!g.is_independent(&pick));
                }
            }
        }
    }

    #[test]
    fn checker_agrees_with_naive_recount((h, c) in arb_hypergraph_and_coloring()) {
        let expect = h.edges().iter().position(|e| !naive_cf_ok(&e.members, c.as_slice()));
        prop_assert_eq!(h.first_violation(&c).unwrap(), expect);
    }

    #[test]
    fn intersection_count_two_ways((h, _c) in arb_hypergraph_and_coloring()) {
        let edges = h.edges();
        let pairwise = (0..edges.len())
            .map(|i| {
                (0..edges.len())
                    .filter(|&j| j != i && edges[i].members.iter().any(|v| edges[j].members.contains(v)))
                    .count()
            })
            .max()
            .unwrap_or(0);
        prop_assert_eq!(h.stats().max_intersections, pairwise);
    }

    #[test]
    fn greedy_bound_and_validity((h, _c) in arb_hypergraph_and_coloring()) {
        let c = cf_color_bounded_degree(&h);
        prop_assert_eq!(h.first_violation(&c).unwrap(), None);
        prop_assert!(c.distinct() <= h.stats().max_vertex_degree + 1);
    }

    #[test]
    fn neighborhood_hypergraph_is_the_cfon_predicate(g in arb_graph(8), colors in proptest::collection::vec(1u32..4, 8)) {
        let (g, _) = g.strip_isolated();
        if g.n() == 0 {
            return Ok(());
        }
        let c = Coloring::new(colors[..g.n()].to_vec());
        let h = open_neighborhood_hypergraph(&g).unwrap();
        let via_h = h.first_violation(&c).unwrap();
        let direct = exact::first_cfon_violation(&g, &c).unwrap();
        prop_assert_eq!(via_h, direct);
        prop_assert_eq!(direct.is_none(), naive_cfon_ok(&g, c.as_slice()));
    }

    #[test]
    fn graph_file_round_trip(g in arb_graph(12)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn product_keeps_layer_uniqueness(layers in proptest::collection::vec(proptest::collection::vec(0u32..3, 10), 1..4)) {
        let layers: Vec<Coloring> = layers.into_iter().map(Coloring::new).collect();
        let prod = product_compact(&layers, 10);
        // same tuple iff same final color
        for u in 0..10 {
            for v in 0..10 {
                let same = layers.iter().all(|l| l[u] == l[v]);
                prop_assert_eq!(same, prod[u] == prod[v]);
            }
        }
        // uniqueness in any layer carries over to every subset containing the carrier
        let set: Vec<usize> = (0..10).step_by(2).collect();
        for l in &layers {
            for &x in &set {
                if set.iter().filter(|&&y| l[y] == l[x]).count() == 1 {
                    prop_assert_eq!(set.iter().filter(|&&y| prod[y] == prod[x]).count(), 1);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pipeline_valid_with_round_invariants(g in arb_graph(14), seed in any::<u64>()) {
        let (g, _) = g.strip_isolated();
        if g.n() == 0 {
            return Ok(());
        }
        let opts = PipelineOptions::new(3, seed);
        let (layered, trace) = color_layers(&g, &opts).unwrap();
        let c = product_compact(&layered.layers, g.n());
        prop_assert!(naive_cfon_ok(&g, c.as_slice()));
        prop_assert!(trace.r <= iterated_log2(trace.delta as f64) + 2);
        // partition: U sets disjoint, V_i = V_{i-1} \ U_i, V_r independent
        let mut seen = vec![false; g.n()];
        for (i, round) in trace.rounds.iter().enumerate() {
            for &u in &round.split.high {
                prop_assert!(!seen[u]);
                seen[u] = true;
            }
            let next: Vec<usize> = round.split.prev.iter().copied().filter(|v| !round.split.high.contains(v)).collect();
            let expected_next = trace.rounds.get(i + 1).map(|r| r.split.prev.clone()).unwrap_or_else(|| trace.final_independent.clone());
            prop_assert_eq!(next, expected_next);
            // per-round satisfaction rechecked on the layer
            let layer = &layered.layers[i];
            for &u in &round.split.high {
                let within: Vec<usize> = g.neighbors(u).iter().copied().filter(|w| round.split.prev.contains(w)).collect();
                prop_assert!(naive_cf_ok(&within, layer.as_slice()));
            }
            // layer is blank exactly off V_{i-1}
            for v in g.vertices() {
                prop_assert_eq!(layer[v] != 0, round.split.prev.contains(&v));
            }
        }
        prop_assert!(g.is_independent(&trace.final_independent));
        prop_assert!(c.distinct() as u128 <= trace.tuple_space.unwrap());
    }

    #[test]
    fn random_colorer_las_vegas(seed in any::<u64>(), n in 8usize..30) {
        let mut r = rng(seed);
        let h = random_wide_hypergraph(n, n, 3, n.min(9), &mut r);
        let p = choose_parameters(&h).unwrap();
        let cfg = RandomColorConfig::with_seed(seed);
        let (c, stats) = cf_color_random(&h, p.t, p.gamma, &cfg).unwrap();
        prop_assert_eq!(h.first_violation(&c).unwrap(), None);
        prop_assert!(c.distinct() <= stats.palette_size);
        prop_assert!(stats.escalations <= cfg.max_escalations);
        prop_assert_eq!(cf_color_random(&h, p.t, p.gamma, &cfg).unwrap().0, c);
    }
}

#[test]
fn feasibility_is_monotone_in_colors() {
    let mut r = rng(3);
    for _ in 0..30 {
        let h = random_bounded_hypergraph(8, 6, 4, 3, &mut r);
        let mut was_feasible = false;
        for c in 1..=5 {
            let now = matches!(cf_hypergraph_exact(&h, c).unwrap(), Feasibility::Feasible(_));
            assert!(!was_feasible || now, "feasible at {} but not {}", c - 1, c);
            was_feasible = now;
        }
        assert!(was_feasible);
    }
}

#[test]
fn pipeline_never_beats_the_oracle() {
    let mut r = rng(17);
    for i in 0..40 {
        let g = random_connected_ish(6 + i % 5, 0.35, &mut r);
        let (c, trace) = cfon_core::cfon_color_skfree(&g, &PipelineOptions::new(3, i as u64)).unwrap();
        let ChiResult::Exact { chi, .. } = chi_on_exact(&g, None).unwrap() else {
            panic!("uncapped search always returns a number")
        };
        assert!(trace.distinct_final >= chi);
        assert_eq!(c.distinct(), trace.distinct_final);
    }
}

#[test]
fn lower_bound_translation_through_line_graph() {
    // edge colors of K_m and vertex colors of L(K_m) commute through the edge map
    for m in 4..=7 {
        let kmm = Family::Complete(m).generate(None).unwrap();
        let (line, map) = kmm.line_graph().unwrap();
        let (c, _) = cfon_core::cfon_color_skfree(&line, &PipelineOptions::new(3, m as u64)).unwrap();
        let edges = edge_coloring_from_line(&map, &c).unwrap();
        match check_line_clique_lb(m, &edges).unwrap() {
            LineCliqueCheck::Certificate { colors_used, bound } => {
                assert_eq!(colors_used, c.distinct());
                assert!(colors_used >= bound);
            }
            other => panic!("valid coloring produced {other:?}"),
        }
        // a neighborhood hypergraph check on the same vertex coloring agrees
        let all: Vec<usize> = line.vertices().collect();
        let h = build_nbr_hypergraph(&line, &all, &all).unwrap();
        assert_eq!(h.first_violation(&c).unwrap(), None);
    }
}

#[test]
fn counterexamples_are_genuine_violations() {
    let mut r = rng(99);
    use rand::Rng;
    for _ in 0..200 {
        let m = r.gen_range(4..=7);
        let kmm = Family::Complete(m).generate(None).unwrap();
        let (line, map) = kmm.line_graph().unwrap();
        let colors: Vec<u32> = (0..map.len()).map(|_| r.gen_range(1..=2)).collect();
        let c = Coloring::new(colors);
        let edges = edge_coloring_from_line(&map, &c).unwrap();
        match check_line_clique_lb(m, &edges).unwrap() {
            LineCliqueCheck::Counterexample { edge } => {
                let idx = map.iter().position(|&e| e == edge).unwrap();
                assert!(!sees_unique(&line, idx, &c));
            }
            LineCliqueCheck::Certificate { colors_used, bound } => {
                // two colors give at most four distinct signatures
                assert!(colors_used >= bound);
                assert_eq!(m, 4);
            }
        }
    }
}
