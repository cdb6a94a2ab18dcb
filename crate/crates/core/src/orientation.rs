//! Bounded-indegree orientations and the two-choice allocation model.
//!
//! Edges are inserted one at a time. An edge whose endpoints both sit at the
//! indegree cap is pointed at one of them and the excess is pushed backwards
//! along incoming edges (breadth first) until it reaches a vertex below the
//! cap, reversing the path. If no such vertex is reachable, the reached set
//! R is closed under incoming edges, so it holds k|R| oriented edges plus the
//! new one: average degree above 2k.

use std::collections::VecDeque;

use rand::Rng;
use serde::Serialize;

use crate::cover::{DenseSetCertificate, DensityForm};
use crate::error::{Error, Result};
use crate::forests::NONE;
use crate::graph::{Edge, Graph, Vertex, VertexSet};
use crate::random::{gen_gnm, pair_count, RngSeed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    /// Head endpoint of each edge, indexed like the edge list.
    pub head: Vec<Vertex>,
    pub indegree: Vec<usize>,
}

impl Orientation {
    pub fn max_indegree(&self) -> usize {
        self.indegree.iter().copied().max().unwrap_or(0)
    }

    /// Each head is an endpoint of its edge and the indegrees match.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.head.len() != g.m() || self.indegree.len() != g.n() {
            return false;
        }
        let mut indeg = vec![0; g.n()];
        for (&(u, v), &h) in g.edges().iter().zip(&self.head) {
            if h != u && h != v {
                return false;
            }
            indeg[h as usize] += 1;
        }
        indeg == self.indegree
    }
}

#[derive(Clone, Debug)]
pub enum Orient {
    Oriented(Orientation),
    Infeasible(DenseSetCertificate),
}

struct Orienter<'e> {
    ends: &'e [Edge],
    k: usize,
    head: Vec<u32>,
    incoming: Vec<Vec<u32>>,
    // BFS scratch
    via: Vec<u32>,
    mark: Vec<u32>,
    stamp: u32,
    queue: VecDeque<u32>,
}

impl<'e> Orienter<'e> {
    fn new(n: usize, ends: &'e [Edge], k: usize) -> Self {
        Self {
            ends,
            k,
            head: vec![NONE; ends.len()],
            incoming: vec![Vec::new(); n],
            via: vec![NONE; n],
            mark: vec![0; n],
            stamp: 0,
            queue: VecDeque::new(),
        }
    }

    fn set_head(&mut self, e: u32, h: u32) {
        let old = self.head[e as usize];
        if old != NONE {
            let list = &mut self.incoming[old as usize];
            let i = list.iter().position(|&x| x == e).expect("edge listed at its head");
            list.swap_remove(i);
        }
        self.head[e as usize] = h;
        self.incoming[h as usize].push(e);
    }

    fn tail(&self, e: u32) -> u32 {
        let (u, v) = self.ends[e as usize];
        if self.head[e as usize] == u {
            v
        } else {
            u
        }
    }

    /// Orients edge `e`, or returns the saturated reached set.
    fn insert(&mut self, e: u32) -> std::result::Result<(), Vec<Vertex>> {
        let (u, v) = self.ends[e as usize];
        let (du, dv) = (self.incoming[u as usize].len(), self.incoming[v as usize].len());
        if du < self.k || dv < self.k {
            self.set_head(e, if du < dv { u } else { v });
            return Ok(());
        }
        self.stamp += 1;
        self.queue.clear();
        let mut reached = Vec::new();
        for s in [v, u] {
            if self.mark[s as usize] != self.stamp {
                self.mark[s as usize] = self.stamp;
                self.via[s as usize] = NONE;
                self.queue.push_back(s);
                reached.push(s);
            }
        }
        while let Some(x) = self.queue.pop_front() {
            for i in 0..self.incoming[x as usize].len() {
                let f = self.incoming[x as usize][i];
                let y = self.tail(f);
                if self.mark[y as usize] == self.stamp {
                    continue;
                }
                self.mark[y as usize] = self.stamp;
                self.via[y as usize] = f;
                if self.incoming[y as usize].len() < self.k {
                    // reverse the path y <- ... <- start, then point e at start
                    let mut cur = y;
                    while self.via[cur as usize] != NONE {
                        let f = self.via[cur as usize];
                        let next = self.head[f as usize];
                        self.set_head(f, cur);
                        cur = next;
                    }
                    self.set_head(e, cur);
                    return Ok(());
                }
                self.queue.push_back(y);
                reached.push(y);
            }
        }
        reached.sort_unstable();
        Err(reached)
    }

    fn indegrees(&self) -> Vec<usize> {
        self.incoming.iter().map(Vec::len).collect()
    }
}

fn count_inside(n: usize, ends: &[Edge], set: &[Vertex]) -> usize {
    let mut inside = vec![false; n];
    for &v in set {
        inside[v as usize] = true;
    }
    ends.iter().filter(|&&(u, v)| inside[u as usize] && inside[v as usize]).count()
}

/// Decides whether `g` has an orientation with all indegrees at most `k`.
pub fn orient_k(g: &Graph, k: usize) -> Orient {
    let mut o = Orienter::new(g.n(), g.edges(), k);
    for e in 0..g.m() as u32 {
        if let Err(reached) = o.insert(e) {
            let cert = DenseSetCertificate::new(g, VertexSet::from_sorted(reached), k, DensityForm::Orientation)
                .expect("saturated search reaches a dense set");
            return Orient::Infeasible(cert);
        }
    }
    let indegree = o.indegrees();
    Orient::Oriented(Orientation { head: o.head, indegree })
}

/// Smallest possible maximum indegree, with an orientation attaining it.
/// Works on edge lists with parallel edges as well.
fn optimal_orientation(n: usize, ends: &[Edge]) -> (usize, Vec<u32>, Vec<usize>) {
    let m = ends.len();
    if m == 0 {
        return (0, Vec::new(), vec![0; n]);
    }
    let mut o = Orienter::new(n, ends, m.div_ceil(n).max(1));
    for e in 0..m as u32 {
        while let Err(reached) = o.insert(e) {
            let need = count_inside(n, ends, &reached).div_ceil(reached.len());
            debug_assert!(need > o.k);
            o.k = need;
        }
    }
    let indegree = o.indegrees();
    (o.k, o.head, indegree)
}

/// min over orientations of the maximum indegree; 0 for edgeless graphs.
pub fn min_max_indegree(g: &Graph) -> usize {
    optimal_orientation(g.n(), g.edges()).0
}

/// An orientation attaining [`min_max_indegree`].
pub fn min_max_orientation(g: &Graph) -> (usize, Orientation) {
    let (k, head, indegree) = optimal_orientation(g.n(), g.edges());
    (k, Orientation { head, indegree })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoadResult {
    pub max_load: usize,
    /// `histogram[j]` bins receive exactly j balls.
    pub histogram: Vec<usize>,
}

/// Allocates `m` balls, each to one of two random bins, minimising the
/// maximum load offline. By default the bin pairs are the edges of
/// G(n, m); with `multigraph` they are drawn independently with
/// replacement.
pub fn two_choice_load(n: usize, m: usize, seed: RngSeed, multigraph: bool) -> Result<LoadResult> {
    let ends: Vec<Edge> = if multigraph {
        if n < 2 && m > 0 {
            return Err(Error::TooFewVertices { n, required: 2 });
        }
        let mut rng = seed.rng();
        (0..m)
            .map(|_| {
                let u = rng.random_range(0..n as u32);
                let mut v = rng.random_range(0..n as u32 - 1);
                if v >= u {
                    v += 1;
                }
                (u.min(v), u.max(v))
            })
            .collect()
    } else {
        if m as u64 > pair_count(n) {
            return Err(Error::param(format!("m = {m} exceeds C(n, 2) = {}", pair_count(n))));
        }
        gen_gnm(n, m, seed)?.edges().to_vec()
    };
    let (max_load, _, indegree) = optimal_orientation(n, &ends);
    let mut histogram = vec![0; max_load + 1];
    for d in indegree {
        histogram[d] += 1;
    }
    Ok(LoadResult { max_load, histogram })
}
