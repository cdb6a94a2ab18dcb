//! Distributional checks of the generators with fixed seeds.

use std::collections::HashMap;

use treepack::{gen_gnm, gen_gnp, Edge, ProcessStream, RngSeed};

/// χ² critical value for 14 degrees of freedom at level 0.001.
const CHI2_14: f64 = 36.123;

fn key(g: &treepack::Graph) -> Vec<Edge> {
    let mut edges = g.edges().to_vec();
    edges.sort_unstable();
    edges
}

fn chi_square(counts: &HashMap<Vec<Edge>, usize>, classes: usize) -> f64 {
    let total: usize = counts.values().sum();
    let expected = total as f64 / classes as f64;
    let seen: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // classes never drawn contribute `expected` each
    seen + (classes - counts.len()) as f64 * expected
}

// G(4, 2) has C(6, 2) = 15 possible edge sets.
const N: usize = 4;
const M: usize = 2;
const CLASSES: usize = 15;

#[test]
fn gnm_uniform() {
    let mut counts = HashMap::new();
    for s in 0..15_000 {
        let g = gen_gnm(N, M, RngSeed::new(s, 1)).unwrap();
        *counts.entry(key(&g)).or_insert(0) += 1;
    }
    assert_eq!(counts.len(), CLASSES);
    let x = chi_square(&counts, CLASSES);
    assert!(x < CHI2_14, "chi2 = {x}");
}

#[test]
fn process_prefix_matches_gnm() {
    let mut counts = HashMap::new();
    for s in 0..15_000 {
        let ps = ProcessStream::new(N, RngSeed::new(s, 2));
        let g = ps.prefix(M).unwrap();
        *counts.entry(key(&g)).or_insert(0) += 1;
    }
    assert_eq!(counts.len(), CLASSES);
    let x = chi_square(&counts, CLASSES);
    assert!(x < CHI2_14, "chi2 = {x}");
}

#[test]
fn gnp_uniform_given_edge_count() {
    let mut counts = HashMap::new();
    for s in 0..40_000 {
        let g = gen_gnp(N, 0.3, RngSeed::new(s, 3)).unwrap();
        if g.m() == M {
            *counts.entry(key(&g)).or_insert(0) += 1;
        }
    }
    let x = chi_square(&counts, CLASSES);
    assert!(x < CHI2_14, "chi2 = {x}");
}

#[test]
fn gnp_edge_count_mean() {
    let (n, p, samples) = (60, 0.1, 400);
    let total: usize = (0..samples).map(|s| gen_gnp(n, p, RngSeed::new(s, 4)).unwrap().m()).sum();
    let mean = total as f64 / samples as f64;
    let pairs = (n * (n - 1) / 2) as f64;
    // standard error of the mean is sqrt(pairs p (1 − p) / samples) ≈ 0.6
    assert!((mean - pairs * p).abs() < 3.0, "mean {mean}");
}
