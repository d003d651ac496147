mod common;

use netrobust::attack::{
    critical_fraction_targeted, random_failure_empirical, run_attack, AttackOptions, AttackStrategy,
};
use netrobust::generators::{generate_ba, BaParams};
use netrobust::Graph;
use proptest::prelude::*;

fn full_run() -> AttackOptions {
    AttackOptions {
        sample_interval: Some(1),
        stop_at_collapse: false,
        record_efficiency: false,
        ..AttackOptions::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn largest_component_size_never_grows(n in 2usize..40, p in 0.05f64..0.5, seed in any::<u64>(), which in 0u8..3) {
        let g = common::random_graph(n, p, seed);
        let strategy = match which {
            0 => AttackStrategy::degree(),
            1 => AttackStrategy::betweenness(),
            _ => AttackStrategy::random(seed),
        };
        let trace = run_attack(&g, &strategy, &full_run()).unwrap();
        for w in trace.samples.windows(2) {
            prop_assert!(w[1].largest_component <= w[0].largest_component);
            prop_assert!(w[1].fraction_removed > w[0].fraction_removed);
        }
        prop_assert_eq!(trace.samples[0].fraction_removed, 0.0);
    }

    #[test]
    fn degree_attack_always_takes_a_max_degree_node(n in 2usize..40, p in 0.05f64..0.5, seed in any::<u64>()) {
        let g = common::random_graph(n, p, seed);
        let trace = run_attack(&g, &AttackStrategy::degree(), &full_run()).unwrap();
        let mut replay = g.clone();
        for &u in &trace.removal_order {
            let max = replay.alive_nodes().map(|v| replay.degree(v)).max().unwrap();
            prop_assert_eq!(replay.degree(u), max);
            let lowest = replay.alive_nodes().find(|&v| replay.degree(v) == max).unwrap();
            prop_assert_eq!(u, lowest);
            replay.remove_node(u).unwrap();
        }
    }

    #[test]
    fn attack_does_not_mutate_input(n in 2usize..30, p in 0.1f64..0.6, seed in any::<u64>()) {
        let g = common::random_graph(n, p, seed);
        let copy = g.clone();
        run_attack(&g, &AttackStrategy::betweenness(), &AttackOptions::default()).unwrap();
        critical_fraction_targeted(&g, &AttackStrategy::degree()).unwrap();
        random_failure_empirical(&g, seed, 2).unwrap();
        prop_assert_eq!(g, copy);
    }
}

#[test]
fn attacks_at_least_as_damaging_as_failures() {
    let g = generate_ba(&BaParams::new(3, 500, 77)).unwrap();
    let targeted = critical_fraction_targeted(&g, &AttackStrategy::degree()).unwrap();
    let random = random_failure_empirical(&g, 5, 30).unwrap();
    assert!(targeted.value <= random.value, "{} > {}", targeted.value, random.value);
}

#[test]
fn random_attack_is_seed_deterministic() {
    let g = generate_ba(&BaParams::new(2, 200, 1)).unwrap();
    let a = run_attack(&g, &AttackStrategy::random(9), &AttackOptions::default()).unwrap();
    let b = run_attack(&g, &AttackStrategy::random(9), &AttackOptions::default()).unwrap();
    assert_eq!(a, b);
    let c = run_attack(&g, &AttackStrategy::random(10), &AttackOptions::default()).unwrap();
    assert_ne!(a.removal_order, c.removal_order);
}

#[test]
fn default_sampling_interval_is_one_percent() {
    let g = generate_ba(&BaParams::new(3, 400, 3)).unwrap();
    let t = run_attack(
        &g,
        &AttackStrategy::degree(),
        &AttackOptions {
            stop_at_collapse: false,
            record_efficiency: false,
            ..AttackOptions::default()
        },
    )
    .unwrap();
    assert!(t.samples.iter().skip(1).rev().skip(1).all(|s| s.removed % 4 == 0));
    assert_eq!(t.samples.last().unwrap().removed, 399);
}

#[test]
fn cycle_trace_stops_at_collapse() {
    let g = Graph::cycle(20);
    let t = run_attack(&g, &AttackStrategy::degree(), &AttackOptions::default()).unwrap();
    assert_eq!(t.critical_fraction.unwrap().value, 0.05);
    assert_eq!(t.removal_order.len(), 1);
    let e0 = t.samples[0].e;
    assert!(e0 > 0.0 && e0 < 1.0);
}
