use monopoly_core::bounds;
use monopoly_core::constructions::{build, Family};
use monopoly_core::engine::{activate, VertexSet};
use monopoly_core::graph::{cartesian_product, complete, cycle, random_connected, star};
use monopoly_core::io::*;
use monopoly_core::ThresholdAssignment;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn factor(kind: u8, n: usize) -> monopoly_core::Graph {
    match kind % 3 {
        0 => cycle(n.max(3)).unwrap(),
        1 => complete(n).unwrap(),
        _ => star(n).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_round_trip(n in 1usize..20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, 0.3, &mut rng).unwrap();
        prop_assert_eq!(&parse_edge_list(&write_edge_list(&g)).unwrap(), &g);
        prop_assert_eq!(&graph_from_json(&graph_to_json(&g)).unwrap(), &g);
    }

    #[test]
    fn products_and_grids_round_trip(a in 0u8..3, b in 0u8..3, m in 1usize..6, n in 1usize..6, seed in any::<u64>()) {
        let g = cartesian_product(&factor(a, m), &factor(b, n)).unwrap();
        prop_assert_eq!(&graph_from_json(&graph_to_json(&g)).unwrap(), &g);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: VertexSet = (0..g.vertex_count()).filter(|_| rng.gen_bool(0.4)).collect();
        let grid = render_grid(&g, &s).unwrap();
        let shape = g.grid().unwrap();
        prop_assert_eq!(grid.matches('*').count(), s.len());
        prop_assert_eq!(grid.lines().count(), shape.rows());
        prop_assert!(grid.lines().all(|l| l.len() == shape.cols()));
        prop_assert!(grid.ends_with('\n'));
        prop_assert_eq!(vertex_set_from_json(&vertex_set_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn thresholds_and_traces_round_trip(n in 2usize..16, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected(n, 0.4, &mut rng).unwrap();
        let values = (0..n).map(|v| rng.gen_range(1..=g.degree(v) as u32)).collect();
        let tau = ThresholdAssignment::explicit(&g, values).unwrap();
        prop_assert_eq!(&thresholds_from_json(&thresholds_to_json(&g, &tau), &g).unwrap(), &tau);

        let s: VertexSet = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        let trace = activate(&g, &tau, &s).unwrap();
        prop_assert_eq!(trace_from_json(&trace_to_json(&trace)).unwrap(), trace);
    }

    #[test]
    fn bound_reports_round_trip(dg in 1usize..30, dh in 1usize..30, t in 3usize..9) {
        let reports = [
            bounds::dyn_product_naive_ub(dg, dh),
            bounds::dyn_product_improved_ub(dg.min(dh), dh.max(dg), t),
            bounds::dyn_product_star_corollary_ub(dg, dh, t),
            bounds::dyn_product_complete_ub(dg + t, t),
            bounds::dyn_product_cycle_ub(dg, dh + 2, t),
            bounds::biregular_line_lb(dh, dh, dh, dh, t.min(2 * dh - 1).max(1)),
        ];
        for r in reports.into_iter().flatten() {
            prop_assert_eq!(bound_from_json(&bound_to_json(&r)).unwrap(), r);
        }
    }
}

#[test]
fn constructions_round_trip() {
    let cases: [(Family, &[usize]); 6] = [
        (Family::Mon2Torus, &[7]),
        (Family::MonCycleComplete, &[7, 9, 6]),
        (Family::MonCirculant, &[5]),
        (Family::DynCycleComplete, &[8, 10, 5]),
        (Family::DynStarStar, &[4, 3]),
        (Family::DynCompleteCompleteSmallM, &[2, 6, 5]),
    ];
    for (family, args) in cases {
        let c = build(family, args).unwrap();
        let text = construction_to_json(&c);
        let doc = construction_from_json(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&doc).unwrap(), text);
        let (g, tau, s) = doc.to_parts().unwrap();
        assert_eq!((&g, &tau, &s), (&c.graph, &c.thresholds, &c.set));
        assert_eq!(doc.cells.len(), c.claimed_size);
        assert_eq!(render_grid(&g, &s).unwrap().matches('*').count(), c.claimed_size);
    }
}

#[test]
fn dynamo_grids_on_cycle_complete() {
    let up = build(Family::DynCycleComplete, &[8, 10, 5]).unwrap();
    let grid = render_grid(&up.graph, &up.set).unwrap();
    let rows: Vec<&str> = grid.lines().collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "***.......");
    assert_eq!(rows[1], ".......***");
    let down = build(Family::DynCycleComplete, &[9, 8, 5]).unwrap();
    let grid = render_grid(&down.graph, &down.set).unwrap();
    assert_eq!(grid.lines().last(), Some("**.....*"));
    assert_eq!(grid.matches('*').count(), 27);
}
