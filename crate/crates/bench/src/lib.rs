//! Fixtures shared by the benchmarks.

use treepack::{gen_gnp, Graph, RngSeed};

/// G(n, c log n / n) with a fixed seed.
pub fn log_density(n: usize, c: f64) -> Graph {
    let p = (c * (n as f64).ln() / n as f64).min(1.0);
    gen_gnp(n, p, RngSeed::new(42, 0)).expect("valid parameters")
}

/// G(n, c / n) with a fixed seed.
pub fn sparse(n: usize, c: f64) -> Graph {
    gen_gnp(n, (c / n as f64).min(1.0), RngSeed::new(42, 1)).expect("valid parameters")
}
