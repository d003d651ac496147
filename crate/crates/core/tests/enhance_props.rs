mod common;

use netrobust::enhance::{
    complement_edges, draw_link, enhance, links_for_cost, sample_new_link, selection_probabilities,
    CandidateEdge, EnhanceMode, EnhancePlan, Enhancer,
};
use netrobust::generators::{generate_ba, BaParams};
use netrobust::rng::rng_from_seed;
use netrobust::Graph;
use proptest::prelude::*;
use std::collections::HashMap;

fn fixed_20() -> Graph {
    generate_ba(&BaParams::new(2, 20, 314)).unwrap()
}

fn mode_strategy() -> impl Strategy<Value = EnhanceMode> {
    prop_oneof![
        (-8.0f64..8.0).prop_map(EnhanceMode::Alpha),
        Just(EnhanceMode::Err),
        Just(EnhanceMode::Ell),
        Just(EnhanceMode::Ehh),
    ]
}

proptest! {
    #[test]
    fn probabilities_sum_to_one(
        degrees in prop::collection::vec(0u32..400, 1..60),
        alpha in -20.0f64..20.0,
    ) {
        let c: Vec<CandidateEdge> = degrees
            .iter()
            .enumerate()
            .map(|(i, &k)| CandidateEdge { u: i, v: i + 1000, link_degree: k as f64 })
            .collect();
        let p = selection_probabilities(&c, alpha).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(p.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn cost_accounting_and_mean_degree(
        m in 1usize..4,
        n in 20usize..80,
        cost in 0.0f64..0.6,
        mode in mode_strategy(),
        seed in any::<u64>(),
    ) {
        let g = generate_ba(&BaParams::new(m, n, seed)).unwrap();
        let e0 = g.edge_count();
        let (h, added) = enhance(&g, &EnhancePlan { mode, cost, seed }).unwrap();
        let d = links_for_cost(e0, cost);
        prop_assert_eq!(added.len(), d);
        prop_assert!(h.check_invariants());
        prop_assert_eq!(h.edge_count(), e0 + d);
        let mean = h.degree_stats().unwrap().mean_degree;
        prop_assert_eq!(mean, 2.0 * (e0 + d) as f64 / n as f64);
        for &(u, v) in &added {
            prop_assert!(u < v && !g.has_edge(u, v) && h.has_edge(u, v));
        }
    }

    #[test]
    fn cost_levels_are_prefixes_of_one_run(seed in any::<u64>(), mode in mode_strategy()) {
        let g = generate_ba(&BaParams::new(2, 40, seed)).unwrap();
        let mut chain = Enhancer::new(&g, mode, seed);
        for cost in [0.1, 0.25, 0.4] {
            chain.advance_to_cost(cost).unwrap();
            let (direct, added) = enhance(&g, &EnhancePlan { mode, cost, seed }).unwrap();
            prop_assert_eq!(chain.graph(), &direct);
            prop_assert_eq!(chain.added(), &added[..]);
        }
    }
}

fn tally(draws: impl Iterator<Item = (usize, usize)>, index: &HashMap<(usize, usize), usize>, cells: usize) -> Vec<u64> {
    let mut counts = vec![0u64; cells];
    for e in draws {
        counts[index[&e]] += 1;
    }
    counts
}

#[test]
fn power_law_draws_match_analytic_probabilities() {
    let g = fixed_20();
    for alpha in [-2.0, -1.0, 1.0, 2.0] {
        let analytic = common::analytic_link_probabilities(&g, alpha);
        let index: HashMap<(usize, usize), usize> =
            analytic.iter().enumerate().map(|(i, (e, _))| (*e, i)).collect();
        let probs: Vec<f64> = analytic.iter().map(|(_, p)| *p).collect();

        let mut rng = rng_from_seed(1000 + alpha.to_bits() % 97);
        let fast = tally(
            (0..10_000).map(|_| draw_link(&g, EnhanceMode::Alpha(alpha), &mut rng).unwrap().unwrap()),
            &index,
            probs.len(),
        );
        let p_fast = common::chi2_gof(&fast, &probs);
        assert!(p_fast > 0.01, "alpha {alpha}: rejection sampler p = {p_fast}");

        let candidates = complement_edges(&g);
        let exact = tally(
            (0..10_000).map(|_| {
                let c = sample_new_link(&candidates, alpha, &mut rng).unwrap();
                (c.u, c.v)
            }),
            &index,
            probs.len(),
        );
        let p_exact = common::chi2_gof(&exact, &probs);
        assert!(p_exact > 0.01, "alpha {alpha}: enumeration sampler p = {p_exact}");

        let computed = selection_probabilities(&candidates, alpha).unwrap();
        for (a, b) in computed.iter().zip(&probs) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn err_matches_alpha_zero() {
    let g = fixed_20();
    let cands = complement_edges(&g);
    let index: HashMap<(usize, usize), usize> = cands.iter().enumerate().map(|(i, c)| ((c.u, c.v), i)).collect();
    let mut r1 = rng_from_seed(1);
    let mut r2 = rng_from_seed(2);
    let err = tally((0..10_000).map(|_| draw_link(&g, EnhanceMode::Err, &mut r1).unwrap().unwrap()), &index, cands.len());
    let zero = tally(
        (0..10_000).map(|_| draw_link(&g, EnhanceMode::Alpha(0.0), &mut r2).unwrap().unwrap()),
        &index,
        cands.len(),
    );
    let p = common::chi2_homogeneity(&err, &zero);
    assert!(p > 0.01, "p = {p}");
    let uniform = vec![1.0 / cands.len() as f64; cands.len()];
    assert!(common::chi2_gof(&err, &uniform) > 0.01);
}

/// Degrees: 0:3 1:1 2:3 3:2 4:1. Unique minimum link degree is (1, 4).
fn unique_min_graph() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (2, 3), (2, 4)]).unwrap()
}

/// Degrees: 0:4 5:3 1:2 6:2, rest 1. Unique maximum link degree is (0, 5).
fn unique_max_graph() -> Graph {
    Graph::from_edges(9, &[(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (5, 7), (5, 8), (1, 6)]).unwrap()
}

#[test]
fn large_alpha_reaches_the_limit_strategies() {
    let mut rng = rng_from_seed(42);
    let g = unique_min_graph();
    let low = (0..1000)
        .filter(|_| draw_link(&g, EnhanceMode::Alpha(-50.0), &mut rng).unwrap() == Some((1, 4)))
        .count();
    assert!(low >= 999, "{low}");
    assert_eq!(draw_link(&g, EnhanceMode::Ell, &mut rng).unwrap(), Some((1, 4)));

    let h = unique_max_graph();
    let high = (0..1000)
        .filter(|_| draw_link(&h, EnhanceMode::Alpha(50.0), &mut rng).unwrap() == Some((0, 5)))
        .count();
    assert!(high >= 999, "{high}");
    for _ in 0..20 {
        assert_eq!(draw_link(&h, EnhanceMode::Ehh, &mut rng).unwrap(), Some((0, 5)));
    }
}

#[test]
fn ell_never_raises_the_maximum_degree_of_a_ba_graph() {
    for seed in 0..5 {
        let g = generate_ba(&BaParams::new(3, 300, seed)).unwrap();
        let max0 = g.alive_nodes().map(|u| g.degree(u)).max().unwrap();
        let mut e = Enhancer::new(&g, EnhanceMode::Ell, seed);
        for d in 1..=links_for_cost(g.edge_count(), 0.5) {
            e.advance_to_links(d).unwrap();
            let max = e.graph().alive_nodes().map(|u| e.graph().degree(u)).max().unwrap();
            assert!(max <= max0);
        }
    }
}

#[test]
fn enhancement_is_seed_deterministic() {
    let g = generate_ba(&BaParams::new(3, 200, 8)).unwrap();
    for mode in [EnhanceMode::Alpha(-8.0), EnhanceMode::Alpha(2.0), EnhanceMode::Err, EnhanceMode::Ell, EnhanceMode::Ehh] {
        let plan = EnhancePlan { mode, cost: 0.3, seed: 5 };
        assert_eq!(enhance(&g, &plan).unwrap(), enhance(&g, &plan).unwrap());
    }
}
