//! Forest covers, arboricity and exact subgraph densities.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{FlowNet, INF};
use crate::forests::{ForestEngine, Insert};
use crate::graph::{Edge, Graph, Rational, Vertex, VertexSet};
use crate::packing::{DecompositionKind, ForestDecomposition, InvalidDecomposition};
use crate::random::IncrementalPredicate;

/// Which density bound a [`DenseSetCertificate`] violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityForm {
    /// |E[S]| > t(|S| − 1): S needs more than t forests.
    Forests,
    /// |E[S]| > t|S|: average degree above 2t, so no t-orientation.
    Orientation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseSetCertificate {
    pub set: VertexSet,
    pub t: usize,
    pub induced: usize,
    pub form: DensityForm,
}

impl DenseSetCertificate {
    /// Recomputes |E[S]| and accepts only a genuine violation.
    pub fn new(g: &Graph, set: VertexSet, t: usize, form: DensityForm) -> Result<Self> {
        let induced = g.induced_edge_count(&set)?;
        let cert = Self { set, t, induced, form };
        if cert.violates() {
            Ok(cert)
        } else {
            Err(Error::param(format!(
                "|E[S]| = {induced} on |S| = {} does not violate the bound for t = {t}",
                cert.set.len()
            )))
        }
    }

    pub fn violates(&self) -> bool {
        let s = self.set.len();
        match self.form {
            DensityForm::Forests => s >= 2 && self.induced > self.t * (s - 1),
            DensityForm::Orientation => s >= 1 && self.induced > self.t * s,
        }
    }

    pub fn verify(&self, g: &Graph) -> bool {
        g.induced_edge_count(&self.set).map(|c| c == self.induced).unwrap_or(false) && self.violates()
    }
}

#[derive(Clone, Debug)]
pub enum Cover {
    Forests(ForestDecomposition),
    Infeasible(DenseSetCertificate),
}

#[derive(Clone, Debug)]
pub struct ArboricityResult {
    pub a: usize,
    pub cover: ForestDecomposition,
    /// Certificate that A − 1 forests do not suffice (absent when A ≤ 1).
    pub certificate: Option<DenseSetCertificate>,
}

fn collect_cover(g: &Graph, eng: &ForestEngine) -> ForestDecomposition {
    let forests = (0..eng.k()).map(|f| eng.forest_edges(f)).collect();
    ForestDecomposition::from_ids(g, DecompositionKind::Cover, forests)
}

/// Decides whether E(G) splits into `k` forests.
pub fn cover_with_k_forests(g: &Graph, k: usize) -> Result<Cover> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let mut eng = ForestEngine::new(g.n(), g.edges().to_vec(), k, true);
    let mut failed = false;
    for e in 0..g.m() as u32 {
        failed |= eng.try_insert(e) != Insert::Placed;
    }
    if failed {
        // every clump is spanned by all k forests, so a clump holding an
        // unplaced edge is over-full; report the most over-full one
        let best = eng
            .clump_classes()
            .expect("clumps tracked")
            .into_iter()
            .filter(|c| c.len() >= 2)
            .map(VertexSet::from_sorted)
            .map(|s| (g.induced_edge_count(&s).expect("valid vertex set"), s))
            .max_by_key(|(induced, s)| (*induced as i64 - (k * (s.len() - 1)) as i64, s.len()))
            .expect("a clump exists after a failure");
        let cert = DenseSetCertificate::new(g, best.1, k, DensityForm::Forests)
            .expect("saturated clump spans a dense set");
        return Ok(Cover::Infeasible(cert));
    }
    Ok(Cover::Forests(collect_cover(g, &eng)))
}

/// A(G), with an optimal cover and a certificate against A − 1.
pub fn arboricity(g: &Graph) -> ArboricityResult {
    let (n, m) = (g.n(), g.m());
    if m == 0 {
        return ArboricityResult {
            a: 0,
            cover: ForestDecomposition { kind: DecompositionKind::Cover, forests: Vec::new() },
            certificate: None,
        };
    }
    let mut eng = ForestEngine::new(n, g.edges().to_vec(), m.div_ceil(n - 1).max(1), false);
    let mut last: Option<VertexSet> = None;
    for e in 0..m as u32 {
        while let Insert::Failed(verts) = eng.try_insert(e) {
            let set = VertexSet::from_sorted(verts);
            let induced = g.induced_edge_count(&set).expect("valid vertex set");
            let need = induced.div_ceil(set.len() - 1);
            debug_assert!(need > eng.k());
            while eng.k() < need {
                eng.add_forest();
            }
            last = Some(set);
        }
    }
    let a = eng.k();
    let certificate = if a >= 2 {
        let set = last.unwrap_or_else(|| VertexSet::all(n));
        Some(DenseSetCertificate::new(g, set, a - 1, DensityForm::Forests).expect("certificate for A - 1"))
    } else {
        None
    };
    ArboricityResult { a, cover: collect_cover(g, &eng), certificate }
}

/// Checks that `fd` is a forest cover of `g`: acyclic forests that
/// partition E(G).
pub fn verify_cover(g: &Graph, fd: &ForestDecomposition) -> Result<(), InvalidDecomposition> {
    let bad = |s: String| Err(InvalidDecomposition(s));
    if fd.kind != DecompositionKind::Cover {
        return bad("decomposition is not a cover".into());
    }
    let mut used = vec![false; g.m()];
    for (i, forest) in fd.forests.iter().enumerate() {
        let mut uf = crate::dsu::UnionFind::new(g.n());
        for &(u, v) in forest {
            let Some(e) = g.edge_id(u, v) else {
                return bad(format!("forest {i}: ({u}, {v}) is not an edge"));
            };
            if std::mem::replace(&mut used[e], true) {
                return bad(format!("edge ({u}, {v}) appears twice"));
            }
            if !uf.union(u, v) {
                return bad(format!("forest {i} contains a cycle"));
            }
        }
    }
    match used.iter().position(|&u| !u) {
        Some(e) => bad(format!("edge {:?} is not covered", g.edges()[e])),
        None => Ok(()),
    }
}

/// Exhaustive arboricity over all vertex subsets.
pub fn brute_force_arboricity(g: &Graph) -> Result<usize> {
    const LIMIT: usize = 14;
    if g.n() > LIMIT {
        return Err(Error::OracleTooLarge { n: g.n(), limit: LIMIT });
    }
    let mut best = 0;
    for mask in 0u32..(1 << g.n()) {
        let s = mask.count_ones() as usize;
        if s < 2 {
            continue;
        }
        let inside = g.edges().iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count();
        best = best.max(inside.div_ceil(s - 1));
    }
    Ok(best)
}

/// max over S with b·|E[S]| − a·|S|, with `forced` required in S when given.
fn max_closure(g: &Graph, a: i64, b: i64, forced: Option<Vertex>) -> (i64, VertexSet) {
    let (n, m) = (g.n(), g.m());
    let (src, sink) = (n + m, n + m + 1);
    let mut net = FlowNet::new(n + m + 2);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_arc(src, n + i, b);
        net.add_arc(n + i, u as usize, INF);
        net.add_arc(n + i, v as usize, INF);
    }
    for v in 0..n {
        net.add_arc(v, sink, a);
    }
    if let Some(v) = forced {
        net.add_arc(src, v as usize, INF);
    }
    let cut = net.max_flow(src, sink);
    let side = net.source_side(src);
    let set = VertexSet::from_sorted((0..n as u32).filter(|&v| side[v as usize]).collect());
    (b * m as i64 - cut, set)
}

fn ratio_of(g: &Graph, s: &VertexSet, denom_offset: usize) -> Rational {
    let induced = g.induced_edge_count(s).expect("valid vertex set");
    Ratio::new(induced as i64, (s.len() - denom_offset) as i64)
}

/// max over |S| ≥ 2 of |E[S]| / (|S| − 1), exactly.
pub fn densest_ratio(g: &Graph) -> Result<Rational> {
    densest_ratio_set(g).map(|(r, _)| r)
}

/// [`densest_ratio`] together with a set attaining it.
pub fn densest_ratio_set(g: &Graph) -> Result<(Rational, VertexSet)> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let mut best_set = VertexSet::all(g.n());
    let mut lambda = ratio_of(g, &best_set, 1);
    loop {
        let (a, b) = (*lambda.numer(), *lambda.denom());
        // |E[S]| − λ(|S| − 1) > 0 for some S means a denser set exists
        let mut improved: Option<(i64, VertexSet)> = None;
        for v in 0..g.n() as Vertex {
            let (value, set) = max_closure(g, a, b, Some(v));
            let value = value + a;
            if value > 0 && improved.as_ref().is_none_or(|(best, _)| value > *best) {
                improved = Some((value, set));
            }
        }
        match improved {
            Some((_, set)) => {
                lambda = ratio_of(g, &set, 1);
                best_set = set;
            }
            None => return Ok((lambda, best_set)),
        }
    }
}

/// max over nonempty S of 2|E[S]| / |S|, with a witness.
pub fn max_avg_degree_subgraph(g: &Graph) -> Result<(Rational, VertexSet)> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let mut set = VertexSet::all(g.n());
    let mut lambda = ratio_of(g, &set, 0);
    loop {
        let (value, next) = max_closure(g, *lambda.numer(), *lambda.denom(), None);
        if value <= 0 {
            return Ok((lambda * 2, set));
        }
        lambda = ratio_of(g, &next, 0);
        set = next;
    }
}

/// Arboricity of G_m tracked edge by edge along an edge sequence.
///
/// Adding an edge raises the arboricity by at most one, and only when the
/// current forests cannot absorb it; a new forest then takes the edge.
pub struct ArboricityTracker {
    eng: ForestEngine,
    m: usize,
    jumps: Vec<usize>,
}

impl ArboricityTracker {
    pub fn new(n: usize) -> Self {
        Self { eng: ForestEngine::new(n, Vec::new(), 0, true), m: 0, jumps: Vec::new() }
    }

    /// Adds an edge; returns true if the arboricity went up.
    pub fn push(&mut self, (u, v): Edge) -> bool {
        let e = self.eng.push_edge((u.min(v), u.max(v)));
        self.m += 1;
        if self.eng.try_insert(e) == Insert::Placed {
            return false;
        }
        self.eng.add_forest();
        let placed = self.eng.try_insert(e);
        debug_assert_eq!(placed, Insert::Placed);
        self.jumps.push(self.m);
        true
    }

    pub fn arboricity(&self) -> usize {
        self.eng.k()
    }

    pub fn edges(&self) -> usize {
        self.m
    }

    /// `hits()[i - 1]` is the edge count at which the arboricity became i.
    pub fn hits(&self) -> &[usize] {
        &self.jumps
    }
}

/// Monotone predicate A(G_m) ≥ target for hitting-time queries.
pub struct ArboricityAtLeast {
    target: usize,
    tracker: ArboricityTracker,
}

impl ArboricityAtLeast {
    pub fn new(target: usize) -> Self {
        Self { target, tracker: ArboricityTracker::new(0) }
    }
}

impl IncrementalPredicate for ArboricityAtLeast {
    fn reset(&mut self, n: usize) {
        self.tracker = ArboricityTracker::new(n);
    }
    fn add_edge(&mut self, u: Vertex, v: Vertex) {
        if self.tracker.arboricity() < self.target {
            self.tracker.push((u, v));
        }
    }
    fn holds(&self) -> bool {
        self.tracker.arboricity() >= self.target
    }
}

/// m_{A=i} for i = 1..=up_to along `order`, stopping at the last one
/// reached.
pub fn arboricity_hitting_times(n: usize, order: &[Edge], up_to: usize) -> Vec<usize> {
    let mut tracker = ArboricityTracker::new(n);
    for &e in order {
        if tracker.arboricity() >= up_to {
            break;
        }
        tracker.push(e);
    }
    tracker.jumps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{gen_gnp, ProcessStream, RngSeed};

    fn brute_densities(g: &Graph) -> (Rational, Rational) {
        let n = g.n();
        let mut nw = Ratio::from_integer(0);
        let mut avg = Ratio::from_integer(0);
        for mask in 1u32..(1 << n) {
            let s = mask.count_ones() as i64;
            let inside = g.edges().iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count() as i64;
            if s >= 2 {
                nw = nw.max(Ratio::new(inside, s - 1));
            }
            avg = avg.max(Ratio::new(2 * inside, s));
        }
        (nw, avg)
    }

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
    fn cover_examples() {
        match cover_with_k_forests(&Graph::cycle(5), 2).unwrap() {
            Cover::Forests(fd) => {
                verify_cover(&Graph::cycle(5), &fd).unwrap();
                let mut sizes: Vec<usize> = fd.forests.iter().map(Vec::len).collect();
                sizes.sort();
                assert_eq!(sizes, vec![1, 4]);
            }
            Cover::Infeasible(_) => panic!("C5 splits into two forests"),
        }
        let k4 = Graph::complete(4);
        match cover_with_k_forests(&k4, 1).unwrap() {
            Cover::Infeasible(c) => {
                assert_eq!(c.set, VertexSet::all(4));
                assert_eq!(c.induced, 6);
            }
            Cover::Forests(_) => panic!(),
        }
        assert!(matches!(cover_with_k_forests(&k4, 2).unwrap(), Cover::Forests(_)));
        assert!(cover_with_k_forests(&k4, 0).is_err());
    }

    #[test]
    fn arboricity_examples() {
        assert_eq!(arboricity(&Graph::path(6)).a, 1);
        assert_eq!(arboricity(&Graph::cycle(7)).a, 2);
        let k5 = arboricity(&Graph::complete(5));
        assert_eq!(k5.a, 3);
        assert!(k5.certificate.unwrap().verify(&Graph::complete(5)));
        assert_eq!(arboricity(&Graph::empty(4)).a, 0);
        assert_eq!(brute_force_arboricity(&Graph::complete(5)).unwrap(), 3);
        assert_eq!(brute_force_arboricity(&Graph::cycle(6)).unwrap(), 2);
        assert_eq!(brute_force_arboricity(&Graph::empty(5)).unwrap(), 0);
        assert!(brute_force_arboricity(&Graph::empty(15)).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(densest_ratio(&Graph::complete(4)).unwrap(), Ratio::from_integer(2));
        assert_eq!(densest_ratio(&petersen()).unwrap(), Ratio::new(5, 3));
        let tri_pendant = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(densest_ratio(&tri_pendant).unwrap(), Ratio::new(3, 2));
        let (d, w) = max_avg_degree_subgraph(&Graph::complete(4)).unwrap();
        assert_eq!((d, w), (Ratio::from_integer(3), VertexSet::all(4)));
        assert_eq!(max_avg_degree_subgraph(&Graph::path(3)).unwrap().0, Ratio::new(4, 3));
        assert!(densest_ratio(&Graph::empty(3)).is_err());
        assert!(max_avg_degree_subgraph(&Graph::empty(3)).is_err());
    }

    #[test]
    fn two_triangles_joined_by_path() {
        // triangles {0,1,2} and {5,6,7}, path 2-3-4-5: 9 edges on 8 vertices
        let g = Graph::from_edges(8, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7)]).unwrap();
        let (d, w) = max_avg_degree_subgraph(&g).unwrap();
        assert_eq!(d, brute_densities(&g).1);
        assert_eq!(d, Ratio::new(9, 4));
        assert_eq!(Ratio::new(2 * g.induced_edge_count(&w).unwrap() as i64, w.len() as i64), d);
    }

    #[test]
    fn random_graphs_match_brute_force() {
        for seed in 0..40 {
            let n = 3 + (seed as usize % 8);
            let g = gen_gnp(n, 0.2 + 0.07 * (seed % 10) as f64, RngSeed::new(seed, 7)).unwrap();
            let res = arboricity(&g);
            assert_eq!(res.a, brute_force_arboricity(&g).unwrap(), "seed {seed}");
            verify_cover(&g, &res.cover).unwrap();
            assert_eq!(res.cover.len(), res.a);
            if let Some(c) = &res.certificate {
                assert!(c.verify(&g));
            }
            if g.m() > 0 {
                let (nw, avg) = brute_densities(&g);
                let (r, s) = densest_ratio_set(&g).unwrap();
                assert_eq!(r, nw);
                assert_eq!(ratio_of(&g, &s, 1), r);
                assert_eq!(r.ceil().to_integer() as usize, res.a);
                let (d, w) = max_avg_degree_subgraph(&g).unwrap();
                assert_eq!(d, avg);
                assert_eq!(ratio_of(&g, &w, 0) * 2, d);
            }
        }
    }

    #[test]
    fn tracker_matches_prefix_arboricity() {
        let ps = ProcessStream::new(12, RngSeed::new(3, 0));
        let mut t = ArboricityTracker::new(12);
        for (i, &e) in ps.order().iter().enumerate() {
            t.push(e);
            assert_eq!(t.arboricity(), arboricity(&ps.prefix(i + 1).unwrap()).a);
        }
        let hits = arboricity_hitting_times(12, ps.order(), 4);
        assert_eq!(hits.len(), 4);
        for (i, &h) in hits.iter().enumerate() {
            let via_pred = ps.hitting_time_incremental(&mut ArboricityAtLeast::new(i + 1));
            assert_eq!(via_pred, Some(h));
            assert_eq!(ps.hitting_time(|g| arboricity(g).a > i), Some(h));
        }
        assert_eq!(hits[0], 1);
        assert_eq!(hits[1], ps.first_cycle_position().unwrap() + 1);
    }
}
