use proptest::prelude::*;

use treepack::asymptotics::{f_k, phi_window};
use treepack::diagnostics::light_vertices;
use treepack::{
    arboricity, brute_force_arboricity, brute_force_stp, densest_ratio, gen_gnm, gen_gnp, max_avg_degree_subgraph,
    min_max_indegree, orient_k, pack_k_trees, stp_number, Graph, Orient, Packing, ProcessStream, RngSeed,
};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = Graph::complete(n).edges().to_vec();
            Graph::from_edges(n, pairs.into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn nonempty(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("needs an edge", |g| g.m() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stp_matches_brute_force(g in graph(8)) {
        prop_assert_eq!(stp_number(&g).unwrap().t, brute_force_stp(&g).unwrap());
    }

    #[test]
    fn stp_below_degree_and_edge_bounds(g in graph(12)) {
        let t = stp_number(&g).unwrap().t;
        prop_assert!(t <= g.min_degree().unwrap().min(g.m() / (g.n() - 1)));
    }

    #[test]
    fn pack_k_decides_at_stp(g in graph(9), k in 1usize..6) {
        let t = stp_number(&g).unwrap().t;
        match pack_k_trees(&g, k).unwrap() {
            Packing::Trees(fd) => prop_assert!(k <= t && fd.len() == k),
            Packing::Infeasible(c) => prop_assert!(k > t && c.verify(&g)),
        }
    }

    #[test]
    fn arboricity_matches_brute_force(g in graph(9)) {
        prop_assert_eq!(arboricity(&g).a, brute_force_arboricity(&g).unwrap());
    }

    #[test]
    fn arboricity_at_least_edge_ratio(g in nonempty(12)) {
        prop_assert!(arboricity(&g).a >= g.m().div_ceil(g.n() - 1));
    }

    #[test]
    fn arboricity_is_ceiling_of_density(g in nonempty(12)) {
        let d = densest_ratio(&g).unwrap();
        prop_assert_eq!(arboricity(&g).a as i64, d.ceil().to_integer());
    }

    #[test]
    fn orientation_is_ceiling_of_half_density(g in nonempty(12)) {
        let (mad, _) = max_avg_degree_subgraph(&g).unwrap();
        let half = mad / 2;
        let k = min_max_indegree(&g);
        prop_assert_eq!(k as i64, half.ceil().to_integer());
        let a = arboricity(&g).a;
        prop_assert!(k <= a && a <= k + 1);
    }

    #[test]
    fn orient_k_monotone_in_k(g in graph(10), k in 0usize..6) {
        let ok = |k| matches!(orient_k(&g, k), Orient::Oriented(_));
        if ok(k) {
            prop_assert!(ok(k + 1));
        }
        prop_assert_eq!(ok(k), k >= min_max_indegree(&g));
        if g.m() > k * g.n() {
            prop_assert!(!ok(k));
        }
    }

    #[test]
    fn light_set_monotone_in_eps(g in graph(12), e1 in 0.0f64..1.0, e2 in 0.0f64..1.0) {
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        let a = light_vertices(&g, lo).unwrap().light;
        let b = light_vertices(&g, hi).unwrap().light;
        prop_assert!(a.is_subset(&b));
        let zero = light_vertices(&g, 0.0).unwrap().light;
        let delta = g.min_degree().unwrap();
        prop_assert!(zero.iter().all(|v| g.degree(v) == delta));
        prop_assert_eq!(zero.len(), g.degrees().iter().filter(|&&d| d == delta).count());
    }

    #[test]
    fn phi_window_ordered(m in 1usize..100_000, n in 2usize..5000, eps in 0.001f64..0.999) {
        let (phi1, phi2) = phi_window(m, n, eps).unwrap();
        prop_assert!(0.0 <= phi1 && phi1 <= phi2 && phi2 <= n as f64);
    }

    #[test]
    fn f_k_in_unit_interval_and_decreasing(k in 1u32..30, mu in 0.0f64..60.0) {
        let a = f_k(k, mu).unwrap();
        let b = f_k(k + 1, mu).unwrap();
        prop_assert!((0.0..=1.0).contains(&a) && b <= a);
    }

    #[test]
    fn generators_are_deterministic(n in 2usize..60, p in 0.0f64..1.0, seed: u64, stream: u64) {
        let s = RngSeed::new(seed, stream);
        prop_assert_eq!(gen_gnp(n, p, s).unwrap(), gen_gnp(n, p, s).unwrap());
        let m = (n * (n - 1) / 2) / 3;
        prop_assert_eq!(gen_gnm(n, m, s).unwrap(), gen_gnm(n, m, s).unwrap());
        let (a, b) = (ProcessStream::new(n, s), ProcessStream::new(n, s));
        prop_assert_eq!(a.order(), b.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn parameters_monotone_along_process(n in 4usize..14, seed: u64) {
        let ps = ProcessStream::new(n, RngSeed::new(seed, 0));
        let mut prev = (0, 0, 0, 0);
        for m in 0..=ps.len() {
            let g = ps.prefix(m).unwrap();
            let cur = (
                g.min_degree().unwrap(),
                stp_number(&g).unwrap().t,
                arboricity(&g).a,
                g.edge_connectivity().unwrap(),
            );
            prop_assert!(cur.0 >= prev.0 && cur.1 >= prev.1 && cur.2 >= prev.2 && cur.3 >= prev.3, "m = {}", m);
            prev = cur;
        }
    }
}
