//! Simple undirected graphs on dense vertex indices `0..n`, plus the
//! vertex-set and partition primitives the packing and covering
//! algorithms are stated in.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};

/// Exact rational used for densities and thresholds.
pub type Rational = Ratio<i64>;

pub type Vertex = u32;

/// Edge as an ordered pair `(u, v)` with `u < v`.
pub type Edge = (Vertex, Vertex);

/// Immutable simple graph. Edge ids are positions in [`Graph::edges`].
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // (neighbor, edge id), sorted by neighbor
    adj: Vec<Vec<(Vertex, u32)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    /// Builds a graph, normalising each pair to `u < v` and rejecting
    /// self-loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        let g = Self::from_edges_unchecked(n, list);
        for (v, nb) in g.adj.iter().enumerate() {
            if let Some(w) = nb.windows(2).find(|w| w[0].0 == w[1].0) {
                let (a, b) = (v as u32, w[0].0);
                return Err(Error::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        Ok(g)
    }

    /// Caller guarantees a simple graph with normalised pairs.
    pub(crate) fn from_edges_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut adj: Vec<Vec<(Vertex, u32)>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u as usize].push((v, i as u32));
            adj[v as usize].push((u, i as u32));
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for v in 1..n as u32 {
            for u in 0..v {
                edges.push((u, v));
            }
        }
        Self::from_edges_unchecked(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).map(|(a, b)| (a.min(b), a.max(b)));
        Self::from_edges_unchecked(n, edges.collect())
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges_unchecked(n, (1..n as u32).map(|i| (i - 1, i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v as usize].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge id)` pairs of `v`, sorted by neighbor.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.adj[v as usize]
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        if u as usize >= self.n || v as usize >= self.n {
            return None;
        }
        let nb = &self.adj[u as usize];
        nb.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| nb[i].1 as usize)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// δ(G). Errors on the empty graph.
    pub fn min_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(Vec::len)
            .min()
            .ok_or(Error::TooFewVertices { n: 0, required: 1 })
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn require(&self, required: usize) -> Result<()> {
        if self.n < required {
            Err(Error::TooFewVertices { n: self.n, required })
        } else {
            Ok(())
        }
    }

    /// d̄(G) = 2m / (n − 1).
    pub fn dbar(&self) -> Result<Rational> {
        self.require(2)?;
        Ok(Rational::new(2 * self.m() as i64, self.n as i64 - 1))
    }

    /// t(G) = min(δ, d̄/2).
    pub fn t_value(&self) -> Result<Rational> {
        let half = self.dbar()? / 2;
        let delta = Rational::from_integer(self.min_degree()? as i64);
        Ok(delta.min(half))
    }

    /// ⌊m / (n − 1)⌋.
    pub fn edges_per_tree_floor(&self) -> Result<usize> {
        self.require(2)?;
        Ok(self.m() / (self.n - 1))
    }

    /// m(𝒫): edges whose endpoints lie in different classes.
    pub fn crossing_edges(&self, p: &Partition) -> Result<usize> {
        p.check_against(self.n)?;
        let label = p.labels();
        Ok(self.edges.iter().filter(|&&(u, v)| label[u as usize] != label[v as usize]).count())
    }

    /// |E[S]|.
    pub fn induced_edge_count(&self, s: &VertexSet) -> Result<usize> {
        let mask = s.mask(self.n)?;
        Ok(self.count_inside(&mask))
    }

    pub(crate) fn count_inside(&self, mask: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask[u as usize] && mask[v as usize]).count()
    }

    /// |E(S, S')| for disjoint `s` and `s2`.
    pub fn edges_between(&self, s: &VertexSet, s2: &VertexSet) -> Result<usize> {
        let a = s.mask(self.n)?;
        let b = s2.mask(self.n)?;
        if let Some(v) = s.iter().find(|&v| b[v as usize]) {
            return Err(Error::OverlappingSets(v));
        }
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| (a[u as usize] && b[v as usize]) || (b[u as usize] && a[v as usize]))
            .count())
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.classes()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.n);
        self.edges.iter().all(|&(u, v)| uf.union(u, v))
    }

    /// Core number of every vertex (bucket peeling, O(n + m)).
    pub fn core_numbers(&self) -> Vec<usize> {
        let n = self.n;
        let mut deg = self.degrees();
        let maxd = deg.iter().copied().max().unwrap_or(0);
        let mut bin = vec![0usize; maxd + 2];
        for &d in &deg {
            bin[d] += 1;
        }
        let mut start = 0;
        for b in bin.iter_mut() {
            let c = *b;
            *b = start;
            start += c;
        }
        let mut pos = vec![0usize; n];
        let mut order = vec![0u32; n];
        for v in 0..n {
            pos[v] = bin[deg[v]];
            order[pos[v]] = v as u32;
            bin[deg[v]] += 1;
        }
        for d in (1..bin.len()).rev() {
            bin[d] = bin[d - 1];
        }
        bin[0] = 0;
        for i in 0..n {
            let v = order[i] as usize;
            for &(w, _) in &self.adj[v] {
                let w = w as usize;
                if deg[w] > deg[v] {
                    let dw = deg[w];
                    let pw = pos[w];
                    let ps = bin[dw];
                    let u = order[ps] as usize;
                    if u != w {
                        order.swap(pw, ps);
                        pos[u] = pw;
                        pos[w] = ps;
                    }
                    bin[dw] += 1;
                    deg[w] -= 1;
                }
            }
        }
        deg
    }

    /// Vertex set of the k-core (possibly empty).
    pub fn k_core(&self, k: usize) -> VertexSet {
        let core = self.core_numbers();
        VertexSet::from_sorted((0..self.n as u32).filter(|&v| core[v as usize] >= k).collect())
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Vertex>)> {
        let mask = s.mask(self.n)?;
        let mut index = vec![u32::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| mask[u as usize] && mask[v as usize])
            .map(|&(u, v)| (index[u as usize], index[v as usize]))
            .collect();
        Ok((Graph::from_edges_unchecked(s.len(), edges), s.as_slice().to_vec()))
    }

    /// Edge connectivity λ(G).
    pub fn edge_connectivity(&self) -> Result<usize> {
        Ok(self.min_cut()?.0)
    }

    /// Global minimum cut `(value, side)` with `side` a nonempty proper subset.
    /// Disconnected graphs return a component; otherwise Stoer–Wagner on a
    /// dense weight matrix.
    pub fn min_cut(&self) -> Result<(usize, VertexSet)> {
        self.require(2)?;
        let comps = self.components();
        if comps.len() > 1 {
            return Ok((0, VertexSet::from_sorted(comps[0].clone())));
        }
        let n = self.n;
        let mut w = vec![0u32; n * n];
        for &(u, v) in &self.edges {
            w[u as usize * n + v as usize] += 1;
            w[v as usize * n + u as usize] += 1;
        }
        // members[i]: original vertices merged into super-vertex i
        let mut members: Vec<Vec<u32>> = (0..n as u32).map(|v| vec![v]).collect();
        let mut alive: Vec<usize> = (0..n).collect();
        let mut best = usize::MAX;
        let mut best_side: Vec<u32> = Vec::new();
        let mut key = vec![0u64; n];
        let mut added = vec![false; n];
        while alive.len() > 1 {
            for &v in &alive {
                key[v] = 0;
                added[v] = false;
            }
            let mut prev = usize::MAX;
            let mut last = alive[0];
            for step in 0..alive.len() {
                let mut sel = usize::MAX;
                for &v in &alive {
                    if !added[v] && (sel == usize::MAX || key[v] > key[sel]) {
                        sel = v;
                    }
                }
                added[sel] = true;
                if step + 1 == alive.len() {
                    if (key[sel] as usize) < best {
                        best = key[sel] as usize;
                        best_side = members[sel].clone();
                    }
                    prev = last;
                    last = sel;
                    break;
                }
                for &v in &alive {
                    if !added[v] {
                        key[v] += w[sel * n + v] as u64;
                    }
                }
                prev = last;
                last = sel;
            }
            let (s, t) = (prev, last);
            for &v in &alive {
                w[s * n + v] += w[t * n + v];
                w[v * n + s] = w[s * n + v];
            }
            w[s * n + s] = 0;
            let moved = std::mem::take(&mut members[t]);
            members[s].extend(moved);
            alive.retain(|&v| v != t);
        }
        best_side.sort_unstable();
        Ok((best, VertexSet::from_sorted(best_side)))
    }
}

/// Sorted set of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub(crate) fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn all(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn complement(&self, n: usize) -> VertexSet {
        Self((0..n as u32).filter(|&v| !self.contains(v)).collect())
    }

    /// Membership mask over `0..n`, validating the range.
    pub fn mask(&self, n: usize) -> Result<Vec<bool>> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            if v as usize >= n {
                return Err(Error::VertexOutOfRange { vertex: v as u64, n });
            }
            mask[v as usize] = true;
        }
        Ok(mask)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<T: IntoIterator<Item = Vertex>>(iter: T) -> Self {
        Self::new(iter)
    }
}

/// Partition of `0..n` into disjoint nonempty classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    classes: Vec<Vec<Vertex>>,
    n: usize,
}

impl Partition {
    pub fn new(n: usize, classes: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut covered = 0;
        let mut classes = classes;
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            class.sort_unstable();
            for &v in class.iter() {
                if v as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: v as u64, n });
                }
                if seen[v as usize] {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                seen[v as usize] = true;
                covered += 1;
            }
        }
        if covered != n {
            return Err(Error::InvalidPartition(format!("covers {covered} of {n} vertices")));
        }
        Ok(Self { classes, n })
    }

    pub fn singletons(n: usize) -> Self {
        Self { classes: (0..n as u32).map(|v| vec![v]).collect(), n }
    }

    pub fn whole(n: usize) -> Self {
        Self { classes: if n == 0 { vec![] } else { vec![(0..n as u32).collect()] }, n }
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Class index of every vertex.
    pub fn labels(&self) -> Vec<u32> {
        let mut label = vec![0u32; self.n];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                label[v as usize] = i as u32;
            }
        }
        label
    }

    fn check_against(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::InvalidPartition(format!(
                "partition is over {} vertices, graph has {n}",
                self.n
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5u32 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(Graph::path(3).min_degree().unwrap(), 1);
        assert_eq!(Graph::complete(5).min_degree().unwrap(), 4);
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.min_degree().unwrap(), 0);
        assert!(Graph::empty(0).min_degree().is_err());
    }

    #[test]
    fn dbar_and_t() {
        assert_eq!(Graph::complete(4).dbar().unwrap(), Rational::from_integer(4));
        assert_eq!(Graph::cycle(5).dbar().unwrap(), Rational::new(5, 2));
        assert_eq!(Graph::empty(10).dbar().unwrap(), Rational::from_integer(0));
        assert!(Graph::empty(1).dbar().is_err());

        assert_eq!(Graph::complete(4).t_value().unwrap(), Rational::from_integer(2));
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.t_value().unwrap(), Rational::from_integer(1));
        assert_eq!(Graph::cycle(6).t_value().unwrap(), Rational::new(6, 5));
    }

    #[test]
    fn crossing_and_induced_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.crossing_edges(&Partition::singletons(4)).unwrap(), 6);
        assert_eq!(k4.crossing_edges(&Partition::whole(4)).unwrap(), 0);
        // C4 = 0-1-2-3-0, opposite pairs {0,2} and {1,3}
        let c4 = Graph::cycle(4);
        let p = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(c4.crossing_edges(&p).unwrap(), 4);
        assert!(c4.crossing_edges(&Partition::singletons(5)).is_err());

        let k5 = Graph::complete(5);
        assert_eq!(k5.induced_edge_count(&VertexSet::new([0, 2, 4])).unwrap(), 3);
        assert_eq!(k5.induced_edge_count(&VertexSet::new([3])).unwrap(), 0);
        assert!(k5.induced_edge_count(&VertexSet::new([7])).is_err());
        assert_eq!(petersen().induced_edge_count(&VertexSet::new(0..5)).unwrap(), 5);
    }

    #[test]
    fn edges_between_examples() {
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        let (l, r) = (VertexSet::new(0..3), VertexSet::new(3..6));
        assert_eq!(k33.edges_between(&l, &r).unwrap(), 9);
        assert_eq!(k33.edges_between(&VertexSet::new([0]), &VertexSet::new([1, 2])).unwrap(), 0);
        let c6 = Graph::cycle(6);
        assert_eq!(c6.edges_between(&VertexSet::new([0, 2, 4]), &VertexSet::new([1, 3, 5])).unwrap(), 6);
        assert_eq!(
            c6.edges_between(&VertexSet::new([0, 1]), &VertexSet::new([1, 2])),
            Err(Error::OverlappingSets(1))
        );
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn k_core_examples() {
        let mut e: Vec<Edge> = Graph::cycle(5).edges().to_vec();
        e.push((0, 5));
        let g = Graph::from_edges(6, e).unwrap();
        assert_eq!(g.k_core(2), VertexSet::new(0..5));
        assert!(Graph::path(7).k_core(2).is_empty());
        assert_eq!(Graph::complete(5).k_core(4), VertexSet::all(5));
        assert!(Graph::complete(5).k_core(5).is_empty());
        assert_eq!(g.k_core(0), VertexSet::all(6));
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(Graph::cycle(8).edge_connectivity().unwrap(), 2);
        assert_eq!(Graph::complete(5).edge_connectivity().unwrap(), 4);
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(two_triangles.edge_connectivity().unwrap(), 0);
        assert_eq!(petersen().edge_connectivity().unwrap(), 3);
        assert!(Graph::empty(1).edge_connectivity().is_err());
    }

    #[test]
    fn min_cut_side_realises_value() {
        // two K4s joined by a single bridge 3-4
        let mut e = Vec::new();
        for base in [0u32, 4] {
            for a in 0..4 {
                for b in a + 1..4 {
                    e.push((base + a, base + b));
                }
            }
        }
        e.push((3, 4));
        let g = Graph::from_edges(8, e).unwrap();
        let (value, side) = g.min_cut().unwrap();
        assert_eq!(value, 1);
        let rest = side.complement(8);
        assert_eq!(g.edges_between(&side, &rest).unwrap(), 1);
    }
}
