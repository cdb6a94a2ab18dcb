//! The structural conditions checked by the diagnostics against exact
//! packing numbers on concrete graphs.

use treepack::diagnostics::{check_prop_a, check_prop_b, CheckParams};
use treepack::{gen_gnp, stp_number, Graph, RngSeed};

/// A dense random core on `core` vertices plus pendant vertices, each
/// joined to `attach` distinct core vertices.
fn core_with_pendants(core: usize, p: f64, pendants: usize, attach: usize, seed: u64) -> Graph {
    let base = gen_gnp(core, p, RngSeed::new(seed, 40)).unwrap();
    let mut edges = base.edges().to_vec();
    for j in 0..pendants {
        let v = (core + j) as u32;
        for a in 0..attach {
            edges.push((((j * attach + a) * 3 % core) as u32, v));
        }
    }
    Graph::from_edges(core + pendants, edges).unwrap()
}

#[test]
fn prop_a_conditions_give_min_degree() {
    let params = CheckParams::new(0.5, 0.25, 0.02);
    let mut held = 0;
    for seed in 0..40 {
        let g = core_with_pendants(15 + seed as usize % 4, 0.9, 1 + seed as usize % 2, 1, seed);
        let report = check_prop_a(&g, params).unwrap();
        if report.all_hold() {
            held += 1;
            assert_eq!(stp_number(&g).unwrap().t, g.min_degree().unwrap(), "seed {seed}");
        }
    }
    assert!(held >= 10, "conditions held on only {held} instances");
}

/// ⌊t⌋ with d̄ = 2m/(n − 1).
fn floor_t(g: &Graph) -> usize {
    g.min_degree().unwrap().min(g.m() / (g.n() - 1))
}

#[test]
fn prop_b_on_cliques() {
    // d(S) = n − 1 against d̄ = n needs n ≥ 10 at slack 0.1
    let params = CheckParams::new(0.5, 0.2, 0.1);
    for n in 10..=19 {
        let g = Graph::complete(n);
        let report = check_prop_b(&g, params).unwrap();
        assert!(report.all_hold(), "n = {n}: {report:?}");
        assert_eq!(stp_number(&g).unwrap().t, floor_t(&g));
        assert_eq!(floor_t(&g), n / 2);
    }
}

#[test]
fn prop_b_conditions_give_floor_t() {
    let mut held = 0;
    for seed in 0..600u64 {
        let n = 8 + seed as usize % 9;
        let g = gen_gnp(n, [0.5, 0.7, 0.9][seed as usize % 3], RngSeed::new(seed, 41)).unwrap();
        if g.m() == 0 {
            continue;
        }
        for params in [CheckParams::new(0.5, 0.2, 0.1), CheckParams::new(1.0, 0.5, 0.01)] {
            if check_prop_b(&g, params).unwrap().all_hold() {
                held += 1;
                assert_eq!(stp_number(&g).unwrap().t, floor_t(&g), "seed {seed}");
            }
        }
    }
    assert!(held > 0);
}

