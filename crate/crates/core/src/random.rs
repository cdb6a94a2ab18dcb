//! Seeded G(n,p), G(n,m) and the edge-by-edge random graph process.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`). A
//! [`RngSeed`] expands its 64-bit seed with `seed_from_u64` and selects the
//! ChaCha stream by `stream`, so each `(seed, stream)` pair is an
//! independent, platform-independent substream.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    /// Substream for sample `sample` of cell `cell` under a master seed.
    pub fn for_sample(master: u64, cell: u32, sample: u32) -> Self {
        Self { seed: master, stream: ((cell as u64) << 32) | sample as u64 }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Colexicographic rank of the pair `(u, v)`, `u < v`.
pub fn pair_index(u: Vertex, v: Vertex) -> u64 {
    let v = v as u64;
    v * (v - 1) / 2 + u as u64
}

/// Inverse of [`pair_index`].
pub fn pair_at(index: u64) -> Edge {
    let mut v = ((1.0 + (1.0 + 8.0 * index as f64).sqrt()) / 2.0) as u64;
    while v * (v - 1) / 2 > index {
        v -= 1;
    }
    while (v + 1) * v / 2 <= index {
        v += 1;
    }
    ((index - v * (v - 1) / 2) as Vertex, v as Vertex)
}

/// G(n,p) by geometric edge skipping over the colex pair order; expected
/// O(n + pn²) time.
pub fn gen_gnp(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p = {p} outside [0, 1]")));
    }
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = seed.rng();
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::with_capacity((p * pair_count(n) as f64 * 1.1) as usize + 16);
    let (mut v, mut w): (u64, i64) = (1, -1);
    let n = n as u64;
    while v < n {
        // r in (0, 1]
        let r: f64 = 1.0 - rng.random::<f64>();
        let skip = (r.ln() / log_q).floor();
        w += 1 + if skip.is_finite() && skip < 1e18 { skip as i64 } else { i64::MAX / 4 };
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as Vertex, v as Vertex));
        }
    }
    Ok(Graph::from_edges_unchecked(n as usize, edges))
}

/// Uniform m-subset of the C(n,2) possible edges.
pub fn gen_gnm(n: usize, m: usize, seed: RngSeed) -> Result<Graph> {
    let total = pair_count(n);
    if m as u64 > total {
        return Err(Error::param(format!("m = {m} exceeds C({n}, 2) = {total}")));
    }
    let mut rng = seed.rng();
    let mut picked: Vec<u64> = if (m as u64) * 4 > total {
        let mut all: Vec<u64> = (0..total).collect();
        let (head, _) = all.partial_shuffle(&mut rng, m);
        head.to_vec()
    } else {
        let mut set = std::collections::HashSet::with_capacity(m * 2);
        let mut order = Vec::with_capacity(m);
        while order.len() < m {
            let x = rng.random_range(0..total);
            if set.insert(x) {
                order.push(x);
            }
        }
        order
    };
    picked.sort_unstable();
    Ok(Graph::from_edges_unchecked(n, picked.into_iter().map(pair_at).collect()))
}

/// One realisation of the random graph process: a uniformly random ordering
/// of all C(n,2) edges (Fisher–Yates). `G_m` is the graph on the first `m`.
#[derive(Clone, Debug)]
pub struct ProcessStream {
    n: usize,
    order: Vec<Edge>,
    cursor: usize,
}

impl ProcessStream {
    pub fn new(n: usize, seed: RngSeed) -> Self {
        let mut order: Vec<Edge> = (0..pair_count(n)).map(pair_at).collect();
        order.shuffle(&mut seed.rng());
        Self { n, order, cursor: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The full ordering e₁, e₂, ….
    pub fn order(&self) -> &[Edge] {
        &self.order
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Adds the next edge, returning it, or `None` at K_n.
    pub fn advance(&mut self) -> Option<Edge> {
        let e = self.order.get(self.cursor).copied()?;
        self.cursor += 1;
        Some(e)
    }

    pub fn current(&self) -> Graph {
        Graph::from_edges_unchecked(self.n, self.order[..self.cursor].to_vec())
    }

    /// G_m.
    pub fn prefix(&self, m: usize) -> Result<Graph> {
        if m > self.order.len() {
            return Err(Error::param(format!("m = {m} exceeds C(n, 2) = {}", self.order.len())));
        }
        Ok(Graph::from_edges_unchecked(self.n, self.order[..m].to_vec()))
    }

    /// Smallest m with `pred(G_m)`, by binary search. `pred` must be
    /// monotone under edge addition; `None` if it fails on K_n.
    pub fn hitting_time<P>(&self, mut pred: P) -> Option<usize>
    where
        P: FnMut(&Graph) -> bool,
    {
        let total = self.order.len();
        if !pred(&self.prefix(total).unwrap()) {
            return None;
        }
        let (mut lo, mut hi) = (0usize, total);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if pred(&self.prefix(mid).unwrap()) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// Smallest m with the tracked predicate true, by a single linear scan.
    pub fn hitting_time_incremental<P: IncrementalPredicate>(&self, pred: &mut P) -> Option<usize> {
        pred.reset(self.n);
        if pred.holds() {
            return Some(0);
        }
        for (i, &(u, v)) in self.order.iter().enumerate() {
            pred.add_edge(u, v);
            if pred.holds() {
                return Some(i + 1);
            }
        }
        None
    }

    /// 0-based position in the ordering of the edge closing the first cycle.
    pub fn first_cycle_position(&self) -> Option<usize> {
        let mut uf = UnionFind::new(self.n);
        self.order.iter().position(|&(u, v)| !uf.union(u, v))
    }
}

/// A monotone graph property evaluated edge by edge.
pub trait IncrementalPredicate {
    fn reset(&mut self, n: usize);
    fn add_edge(&mut self, u: Vertex, v: Vertex);
    fn holds(&self) -> bool;
}

#[derive(Clone, Debug)]
pub struct EdgeCountAtLeast {
    target: usize,
    m: usize,
}

impl EdgeCountAtLeast {
    pub fn new(target: usize) -> Self {
        Self { target, m: 0 }
    }
}

impl IncrementalPredicate for EdgeCountAtLeast {
    fn reset(&mut self, _n: usize) {
        self.m = 0;
    }
    fn add_edge(&mut self, _u: Vertex, _v: Vertex) {
        self.m += 1;
    }
    fn holds(&self) -> bool {
        self.m >= self.target
    }
}

/// δ(G_m) ≥ d.
#[derive(Clone, Debug)]
pub struct MinDegreeAtLeast {
    target: usize,
    degree: Vec<usize>,
    below: usize,
}

impl MinDegreeAtLeast {
    pub fn new(target: usize) -> Self {
        Self { target, degree: Vec::new(), below: 0 }
    }
}

impl IncrementalPredicate for MinDegreeAtLeast {
    fn reset(&mut self, n: usize) {
        self.degree = vec![0; n];
        self.below = if self.target > 0 { n } else { 0 };
    }
    fn add_edge(&mut self, u: Vertex, v: Vertex) {
        for x in [u, v] {
            let d = &mut self.degree[x as usize];
            *d += 1;
            if *d == self.target {
                self.below -= 1;
            }
        }
    }
    fn holds(&self) -> bool {
        self.below == 0
    }
}

/// G_m contains a cycle.
#[derive(Clone, Debug)]
pub struct HasCycle {
    uf: UnionFind,
    cyclic: bool,
}

impl Default for HasCycle {
    fn default() -> Self {
        Self { uf: UnionFind::new(0), cyclic: false }
    }
}

impl IncrementalPredicate for HasCycle {
    fn reset(&mut self, n: usize) {
        self.uf = UnionFind::new(n);
        self.cyclic = false;
    }
    fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if !self.uf.union(u, v) {
            self.cyclic = true;
        }
    }
    fn holds(&self) -> bool {
        self.cyclic
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_index_roundtrip() {
        let mut i = 0;
        for v in 1..60u32 {
            for u in 0..v {
                assert_eq!(pair_index(u, v), i);
                assert_eq!(pair_at(i), (u, v));
                i += 1;
            }
        }
    }

    #[test]
    fn gnp_extremes_and_validation() {
        let s = RngSeed::new(1, 0);
        assert_eq!(gen_gnp(12, 0.0, s).unwrap().m(), 0);
        assert_eq!(gen_gnp(12, 1.0, s).unwrap().m(), 66);
        assert!(gen_gnp(12, 1.5, s).is_err());
        assert!(gen_gnp(12, -0.1, s).is_err());
        assert!(gen_gnp(12, f64::NAN, s).is_err());
    }

    #[test]
    fn gnp_edge_frequency() {
        let samples = 10_000;
        let hits = (0..samples)
            .filter(|&i| gen_gnp(6, 0.3, RngSeed::new(7, i)).unwrap().has_edge(0, 1))
            .count();
        let mean = hits as f64 / samples as f64;
        assert!((mean - 0.3).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn gnp_is_simple_and_deterministic() {
        let a = gen_gnp(300, 0.05, RngSeed::new(3, 9)).unwrap();
        let b = gen_gnp(300, 0.05, RngSeed::new(3, 9)).unwrap();
        assert_eq!(a, b);
        assert!(Graph::from_edges(300, a.edges().iter().copied()).is_ok());
        let c = gen_gnp(300, 0.05, RngSeed::new(3, 10)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn gnm_extremes_and_validation() {
        let s = RngSeed::new(2, 0);
        assert_eq!(gen_gnm(7, 0, s).unwrap().m(), 0);
        assert_eq!(gen_gnm(7, 21, s).unwrap(), Graph::complete(7));
        assert!(gen_gnm(7, 22, s).is_err());
        let g = gen_gnm(100, 300, s).unwrap();
        assert_eq!(g.m(), 300);
        assert!(Graph::from_edges(100, g.edges().iter().copied()).is_ok());
    }

    #[test]
    fn gnm_edge_frequencies_are_uniform() {
        let samples = 100_000u64;
        let mut count = [0u32; 10];
        for i in 0..samples {
            for &(u, v) in gen_gnm(5, 4, RngSeed::new(11, i)).unwrap().edges() {
                count[pair_index(u, v) as usize] += 1;
            }
        }
        for c in count {
            let f = c as f64 / samples as f64;
            assert!((f - 0.4).abs() < 0.01, "frequency {f}");
        }
    }

    #[test]
    fn process_prefixes() {
        let ps = ProcessStream::new(9, RngSeed::new(5, 0));
        assert_eq!(ps.len(), 36);
        assert_eq!(ps.prefix(0).unwrap().m(), 0);
        let full = ps.prefix(36).unwrap();
        assert_eq!(full.m(), 36);
        assert!((0..9).all(|v| full.degree(v) == 8));
        assert!(ps.prefix(37).is_err());
        for m in 0..36 {
            let a = ps.prefix(m).unwrap();
            let b = ps.prefix(m + 1).unwrap();
            assert!(a.edges().iter().all(|&(u, v)| b.has_edge(u, v)));
        }
        let mut stepping = ps.clone();
        for m in 0..5 {
            assert_eq!(stepping.current(), ps.prefix(m).unwrap());
            stepping.advance();
        }
    }

    #[test]
    fn hitting_times() {
        let ps = ProcessStream::new(50, RngSeed::new(8, 1));
        assert_eq!(ps.hitting_time(|g| g.m() >= 5), Some(5));
        assert_eq!(ps.hitting_time_incremental(&mut EdgeCountAtLeast::new(5)), Some(5));
        assert_eq!(ps.hitting_time(|g| g.m() > 2000), None);

        let binary = ps.hitting_time(|g| g.min_degree().unwrap() >= 1).unwrap();
        let incremental = ps.hitting_time_incremental(&mut MinDegreeAtLeast::new(1)).unwrap();
        // independent scan oracle
        let mut deg = [0; 50];
        let mut zero = 50;
        let mut scan = None;
        for (i, &(u, v)) in ps.order().iter().enumerate() {
            for x in [u, v] {
                deg[x as usize] += 1;
                if deg[x as usize] == 1 {
                    zero -= 1;
                }
            }
            if zero == 0 {
                scan = Some(i + 1);
                break;
            }
        }
        assert_eq!(Some(binary), scan);
        assert_eq!(Some(incremental), scan);

        let first = ps.first_cycle_position().unwrap();
        assert_eq!(ps.hitting_time_incremental(&mut HasCycle::default()), Some(first + 1));
        assert_eq!(ps.hitting_time(|g| !g.is_forest()), Some(first + 1));
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = ProcessStream::new(20, RngSeed::new(99, 3));
        let b = ProcessStream::new(20, RngSeed::new(99, 3));
        assert_eq!(a.order(), b.order());
        assert_ne!(a.order(), ProcessStream::new(20, RngSeed::new(99, 4)).order());
        assert_eq!(RngSeed::for_sample(5, 2, 7), RngSeed::new(5, (2 << 32) | 7));
    }
}
