//! Checkers for the structural hypotheses under which T(G) equals δ or
//! ⌊min(δ, d̄/2)⌋, with ε-light vertex analysis.
//!
//! Conditions quantifying over vertex sets are checked exactly by
//! enumeration when n ≤ 20. Beyond that a condition is reported as holding
//! only when an exact sufficient condition certifies it; otherwise the
//! checker searches for a violation and labels the verdict approximate.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::cover::max_avg_degree_subgraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::random::RngSeed;

type Q = Ratio<i128>;

/// Largest n checked by exhaustive subset enumeration.
pub const EXACT_LIMIT: usize = 20;

/// Most light pairs listed in a report; the counts are always exact.
pub const PAIR_LIST_LIMIT: usize = 1000;

fn q(x: usize) -> Q {
    Q::from_integer(x as i128)
}

fn q_from(x: f64, what: &str) -> Result<Q> {
    Q::approximate_float(x).ok_or_else(|| Error::param(format!("{what} = {x} is not representable")))
}

fn show(x: &Q) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn dbar(g: &Graph) -> Q {
    Q::new(2 * g.m() as i128, g.n() as i128 - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LightVertexReport {
    pub epsilon: f64,
    /// δ + ε·d̄ as an exact fraction.
    pub threshold: String,
    pub threshold_value: f64,
    pub light: VertexSet,
    pub adjacent_pair_count: usize,
    pub adjacent_pairs: Vec<(Vertex, Vertex)>,
    pub shared_neighbor_pair_count: usize,
    /// (light u, light v, common neighbour w).
    pub shared_neighbor_pairs: Vec<(Vertex, Vertex, Vertex)>,
}

impl LightVertexReport {
    pub fn has_violations(&self) -> bool {
        self.adjacent_pair_count > 0 || self.shared_neighbor_pair_count > 0
    }
}

/// Vertices of degree at most δ + ε·d̄, with adjacent light pairs and light
/// pairs sharing a neighbour.
pub fn light_vertices(g: &Graph, eps: f64) -> Result<LightVertexReport> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices { n: g.n(), required: 2 });
    }
    if !(0.0..f64::INFINITY).contains(&eps) {
        return Err(Error::param(format!("eps must be finite and >= 0, got {eps}")));
    }
    let threshold = q(g.min_degree()?) + q_from(eps, "eps")? * dbar(g);
    let is_light: Vec<bool> = (0..g.n() as Vertex).map(|v| q(g.degree(v)) <= threshold).collect();
    let light = VertexSet::from_sorted((0..g.n() as Vertex).filter(|&v| is_light[v as usize]).collect());

    let mut adjacent_pairs = Vec::new();
    let mut adjacent_pair_count = 0;
    for &(u, v) in g.edges() {
        if is_light[u as usize] && is_light[v as usize] {
            adjacent_pair_count += 1;
            if adjacent_pairs.len() < PAIR_LIST_LIMIT {
                adjacent_pairs.push((u, v));
            }
        }
    }
    adjacent_pairs.sort_unstable();

    let mut shared_neighbor_pairs = Vec::new();
    let mut shared_neighbor_pair_count = 0;
    for w in 0..g.n() as Vertex {
        let mut lights: Vec<Vertex> = g.neighbors(w).filter(|&x| is_light[x as usize]).collect();
        lights.sort_unstable();
        let k = lights.len();
        shared_neighbor_pair_count += k * k.saturating_sub(1) / 2;
        'outer: for i in 0..k {
            for j in i + 1..k {
                if shared_neighbor_pairs.len() >= PAIR_LIST_LIMIT {
                    break 'outer;
                }
                shared_neighbor_pairs.push((lights[i], lights[j], w));
            }
        }
    }

    Ok(LightVertexReport {
        epsilon: eps,
        threshold: show(&threshold),
        threshold_value: threshold.to_f64().unwrap_or(f64::NAN),
        light,
        adjacent_pair_count,
        adjacent_pairs,
        shared_neighbor_pair_count,
        shared_neighbor_pairs,
    })
}

/// Concrete evidence that a condition fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// δ exceeds the allowed bound.
    MinDegree { delta: usize, bound: String },
    AdjacentLight { u: Vertex, v: Vertex },
    SharedLightNeighbor { u: Vertex, v: Vertex, common: Vertex },
    /// A small set inducing too many edges.
    DenseSet { set: VertexSet, induced: usize, bound: String },
    /// Disjoint sets with too few edges between them.
    SparsePair { s: VertexSet, s_prime: VertexSet, crossing: usize, bound: String },
    /// A large set whose average degree is too low.
    LowDegreeSet { set: VertexSet, degree_sum: usize, bound: String },
    /// A cut smaller than t.
    SmallCut { side: VertexSet, crossing: usize, t: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Holds { method: String },
    Fails { method: String, witness: Witness },
    /// No violation found, but the search was not exhaustive.
    Approximate { method: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Parameters shared by both checkers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CheckParams {
    pub eps: f64,
    pub zeta: f64,
    pub eta: f64,
    /// Relative slack for the average-degree condition on large sets.
    pub slack: f64,
    pub seed: u64,
    /// Random set pairs tried by the sampled search when n > 20.
    pub samples: usize,
}

impl CheckParams {
    pub fn new(eps: f64, zeta: f64, eta: f64) -> Self {
        Self { eps, zeta, eta, slack: 0.1, seed: 0, samples: 200 }
    }

    fn validate(&self) -> Result<()> {
        for (name, x) in [("eps", self.eps), ("zeta", self.zeta), ("eta", self.eta)] {
            if !(x > 0.0 && x <= 1.0) {
                return Err(Error::param(format!("{name} must lie in (0, 1], got {x}")));
            }
        }
        if !(0.0..1.0).contains(&self.slack) {
            return Err(Error::param(format!("slack must lie in [0, 1), got {}", self.slack)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub proposition: String,
    pub params: CheckParams,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub dbar: String,
    pub conditions: Vec<Condition>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict.holds())
    }

    pub fn any_fails(&self) -> bool {
        self.conditions.iter().any(|c| c.verdict.fails())
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.conditions.iter().find(|c| c.name == name).map(|c| &c.verdict)
    }
}

struct Ctx<'g> {
    g: &'g Graph,
    n: usize,
    delta: usize,
    dbar: Q,
    eps: Q,
    zeta: Q,
    eta: Q,
    params: CheckParams,
}

impl<'g> Ctx<'g> {
    fn new(g: &'g Graph, params: CheckParams) -> Result<Self> {
        params.validate()?;
        if g.n() < 2 {
            return Err(Error::TooFewVertices { n: g.n(), required: 2 });
        }
        Ok(Self {
            g,
            n: g.n(),
            delta: g.min_degree()?,
            dbar: dbar(g),
            eps: q_from(params.eps, "eps")?,
            zeta: q_from(params.zeta, "zeta")?,
            eta: q_from(params.eta, "eta")?,
            params,
        })
    }

    /// Smallest integer size s with s ≥ ζn.
    fn large_size(&self) -> usize {
        (self.zeta * q(self.n)).ceil().to_integer() as usize
    }

    /// Sizes s < ζn are "small".
    fn is_small(&self, s: usize) -> bool {
        q(s) < self.zeta * q(self.n)
    }

    fn report(&self, proposition: &str, conditions: Vec<Condition>) -> ConditionReport {
        ConditionReport {
            proposition: proposition.into(),
            params: self.params,
            n: self.n,
            m: self.g.m(),
            delta: self.delta,
            dbar: show(&self.dbar),
            conditions,
        }
    }
}

fn exact(name: &str, method: &str, witness: Option<Witness>) -> Condition {
    let verdict = match witness {
        Some(witness) => Verdict::Fails { method: method.into(), witness },
        None => Verdict::Holds { method: method.into() },
    };
    Condition { name: name.into(), verdict }
}

fn light_witness(report: &LightVertexReport) -> Option<Witness> {
    if let Some(&(u, v)) = report.adjacent_pairs.first() {
        return Some(Witness::AdjacentLight { u, v });
    }
    report.shared_neighbor_pairs.first().map(|&(u, v, common)| Witness::SharedLightNeighbor { u, v, common })
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    adj
}

fn mask_set(mask: u32) -> VertexSet {
    VertexSet::from_sorted((0..32).filter(|&v| mask >> v & 1 == 1).collect())
}

fn induced_in_mask(adj: &[u32], mask: u32) -> usize {
    let mut twice = 0;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        twice += (adj[v as usize] & mask).count_ones() as usize;
    }
    twice / 2
}

/// No set of size s < ζn induces more than `bound`·s edges.
fn sparse_small_sets(cx: &Ctx, name: &str, bound: Q) -> Condition {
    let g = cx.g;
    let dense = |set: VertexSet, induced: usize| Witness::DenseSet { set, induced, bound: show(&bound) };
    if cx.n <= EXACT_LIMIT {
        let adj = adjacency_masks(g);
        for mask in 1u32..1 << cx.n {
            let s = mask.count_ones() as usize;
            if !cx.is_small(s) {
                continue;
            }
            let induced = induced_in_mask(&adj, mask);
            if q(induced) > bound * q(s) {
                return exact(name, "exact enumeration", Some(dense(mask_set(mask), induced)));
            }
        }
        return exact(name, "exact enumeration", None);
    }
    // a set of size s has at most s(s−1)/2 edges
    let largest_small = cx.large_size().saturating_sub(1);
    if q(largest_small.saturating_sub(1)) <= bound * q(2) {
        return exact(name, "size bound |E[S]| <= s(s-1)/2", None);
    }
    if g.m() == 0 {
        return exact(name, "edgeless", None);
    }
    let (density, witness) = max_avg_degree_subgraph(g).expect("graph has edges");
    let max_ratio = Q::new(*density.numer() as i128, 2 * *density.denom() as i128);
    if max_ratio <= bound {
        return exact(name, "densest subgraph bound", None);
    }
    if cx.is_small(witness.len()) {
        let induced = g.induced_edge_count(&witness).expect("valid set");
        return exact(name, "densest subgraph", Some(dense(witness, induced)));
    }
    // peel minimum-degree vertices and test every small prefix
    let order = peeling_order(g);
    let mut alive = vec![true; cx.n];
    let mut induced = g.m();
    for (removed, &v) in order.iter().enumerate() {
        let s = cx.n - removed;
        if s >= 1 && cx.is_small(s) && q(induced) > bound * q(s) {
            let set = VertexSet::from_sorted((0..cx.n as Vertex).filter(|&w| alive[w as usize]).collect());
            return exact(name, "peeling search", Some(dense(set, induced)));
        }
        alive[v as usize] = false;
        induced -= g.neighbors(v).filter(|&w| alive[w as usize]).count();
    }
    Condition {
        name: name.into(),
        verdict: Verdict::Approximate { method: "peeling search found no violation".into() },
    }
}

/// Vertices in the order a min-degree peeling removes them.
fn peeling_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut deg = g.degrees();
    let mut removed = vec![false; n];
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(usize, Vertex)>> =
        (0..n as Vertex).map(|v| std::cmp::Reverse((deg[v as usize], v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse((d, v))) = heap.pop() {
        if removed[v as usize] || d != deg[v as usize] {
            continue;
        }
        removed[v as usize] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !removed[w as usize] {
                deg[w as usize] -= 1;
                heap.push(std::cmp::Reverse((deg[w as usize], w)));
            }
        }
    }
    order
}

/// How the required edge count between S and S' scales.
#[derive(Clone, Copy)]
enum PairBound {
    /// |E(S, S')| ≥ η·d̄·n
    Flat,
    /// |E(S, S')| ≥ η·d̄·|S||S'|/n
    Proportional,
}

impl PairBound {
    fn required(self, cx: &Ctx, s: usize, s_prime: usize) -> Q {
        match self {
            PairBound::Flat => cx.eta * cx.dbar * q(cx.n),
            PairBound::Proportional => cx.eta * cx.dbar * q(s) * q(s_prime) / q(cx.n),
        }
    }
}

/// Given S', the best S (disjoint, |S| ≥ |S'|) takes the vertices with the
/// fewest neighbours in S'. Returns a violating S if there is one.
fn best_partner(cx: &Ctx, in_s_prime: &[bool], s_prime: usize, kind: PairBound) -> Option<(Vec<Vertex>, usize, Q)> {
    let mut counts: Vec<(usize, Vertex)> = (0..cx.n as Vertex)
        .filter(|&v| !in_s_prime[v as usize])
        .map(|v| (cx.g.neighbors(v).filter(|&w| in_s_prime[w as usize]).count(), v))
        .collect();
    counts.sort_unstable();
    let max_s = match kind {
        PairBound::Flat => s_prime.min(counts.len()),
        PairBound::Proportional => counts.len(),
    };
    let mut crossing = 0;
    for (i, &(c, _)) in counts.iter().enumerate().take(max_s) {
        crossing += c;
        let s = i + 1;
        if s >= s_prime {
            let required = kind.required(cx, s, s_prime);
            if q(crossing) < required {
                let set = counts[..s].iter().map(|&(_, v)| v).collect();
                return Some((set, crossing, required));
            }
        }
    }
    None
}

fn sparse_pair_witness(s: Vec<Vertex>, s_prime: Vec<Vertex>, crossing: usize, required: Q) -> Witness {
    Witness::SparsePair {
        s: VertexSet::new(s),
        s_prime: VertexSet::new(s_prime),
        crossing,
        bound: show(&required),
    }
}

/// Edge expansion between large disjoint sets.
fn expanding_pairs(cx: &Ctx, name: &str, kind: PairBound) -> Condition {
    let min_size = cx.large_size().max(1);
    if 2 * min_size > cx.n {
        return exact(name, "vacuous: no two disjoint sets are large enough", None);
    }
    let mut in_s_prime = vec![false; cx.n];
    if cx.n <= EXACT_LIMIT {
        for mask in 1u32..1 << cx.n {
            let s_prime = mask.count_ones() as usize;
            if s_prime < min_size || 2 * s_prime > cx.n {
                continue;
            }
            for (v, slot) in in_s_prime.iter_mut().enumerate() {
                *slot = mask >> v & 1 == 1;
            }
            if let Some((s, crossing, required)) = best_partner(cx, &in_s_prime, s_prime, kind) {
                let s_prime_set = mask_set(mask).as_slice().to_vec();
                return exact(name, "exact enumeration", Some(sparse_pair_witness(s, s_prime_set, crossing, required)));
            }
        }
        return exact(name, "exact enumeration", None);
    }
    let mut candidates: Vec<Vec<Vertex>> = Vec::new();
    let mut by_degree: Vec<Vertex> = (0..cx.n as Vertex).collect();
    by_degree.sort_by_key(|&v| (cx.g.degree(v), v));
    candidates.push(by_degree[..min_size].to_vec());
    if let Ok((_, side)) = cx.g.min_cut() {
        let small = if 2 * side.len() <= cx.n { side } else { side.complement(cx.n) };
        if small.len() >= min_size {
            candidates.push(small.as_slice().to_vec());
        }
    }
    let mut rng = RngSeed::new(cx.params.seed, 0).rng();
    let mut all: Vec<Vertex> = (0..cx.n as Vertex).collect();
    for _ in 0..cx.params.samples {
        let size = rng.random_range(min_size..=cx.n / 2);
        let (chosen, _) = all.partial_shuffle(&mut rng, size);
        candidates.push(chosen.to_vec());
    }
    for cand in candidates {
        in_s_prime.fill(false);
        for &v in &cand {
            in_s_prime[v as usize] = true;
        }
        if let Some((s, crossing, required)) = best_partner(cx, &in_s_prime, cand.len(), kind) {
            return exact(name, "sampled search", Some(sparse_pair_witness(s, cand, crossing, required)));
        }
    }
    Condition {
        name: name.into(),
        verdict: Verdict::Approximate {
            method: format!("sampled search over {} set pairs found no violation", cx.params.samples + 2),
        },
    }
}

/// Checks the hypotheses under which T(G) = δ: (a) few, isolated light
/// vertices and small δ; (b) small sets are sparse; (c) large disjoint sets
/// are joined by many edges.
pub fn check_prop_a(g: &Graph, params: CheckParams) -> Result<ConditionReport> {
    let cx = Ctx::new(g, params)?;
    let quarter_eps = cx.eps / q(4);
    let light = light_vertices(g, params.eps)?;
    let bound = quarter_eps * cx.dbar;
    let a = if q(cx.delta) > bound {
        Some(Witness::MinDegree { delta: cx.delta, bound: show(&bound) })
    } else {
        light_witness(&light)
    };
    let conditions = vec![
        exact("a", "exact", a),
        sparse_small_sets(&cx, "b", bound),
        expanding_pairs(&cx, "c", PairBound::Flat),
    ];
    Ok(cx.report("a", conditions))
}

/// Checks the hypotheses under which T(G) = ⌊t⌋, t = min(δ, d̄/2).
pub fn check_prop_b(g: &Graph, params: CheckParams) -> Result<ConditionReport> {
    let cx = Ctx::new(g, params)?;
    let t = q(cx.delta).min(cx.dbar / q(2));

    let a = if q(cx.delta) > (Q::from_integer(1) + cx.eps) * cx.dbar / q(2) {
        None
    } else {
        light_witness(&light_vertices(g, params.eps)?)
    };

    // the ⌈ζn⌉ lowest degrees minimise d(S) over |S| ≥ ζn
    let slack = q_from(params.slack, "slack")?;
    let size = cx.large_size().clamp(1, cx.n);
    let mut by_degree: Vec<Vertex> = (0..cx.n as Vertex).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let low = &by_degree[..size];
    let degree_sum: usize = low.iter().map(|&v| g.degree(v)).sum();
    let required = cx.dbar * (Q::from_integer(1) - slack);
    let b = (q(degree_sum) < required * q(size)).then(|| Witness::LowDegreeSet {
        set: VertexSet::new(low.iter().copied()),
        degree_sum,
        bound: show(&(required * q(size))),
    });

    let (lambda, side) = g.min_cut()?;
    let d = (q(lambda) < t).then(|| Witness::SmallCut { side, crossing: lambda, t: show(&t) });

    let conditions = vec![
        exact("a'", "exact", a),
        exact("b'", &format!("exact, slack {}", params.slack), b),
        expanding_pairs(&cx, "c'", PairBound::Proportional),
        exact("d'", "exact minimum cut", d),
        sparse_small_sets(&cx, "e'", cx.eps / q(4) * t),
    ];
    Ok(cx.report("b", conditions))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn light_examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = light_vertices(&star, 0.5).unwrap();
        assert_eq!(r.threshold, "2");
        assert_eq!(r.light, VertexSet::new([1, 2, 3]));
        assert_eq!(r.adjacent_pair_count, 0);
        assert_eq!(r.shared_neighbor_pair_count, 3);
        assert!(r.shared_neighbor_pairs.iter().all(|p| p.2 == 0));

        let r = light_vertices(&Graph::cycle(7), 0.0).unwrap();
        assert_eq!(r.light, VertexSet::all(7));

        // K4 minus edge 2-3
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let r = light_vertices(&g, 0.1).unwrap();
        assert_eq!(r.threshold, "7/3");
        assert_eq!(r.light, VertexSet::new([2, 3]));
        assert_eq!(r.adjacent_pair_count, 0);
        assert_eq!(r.shared_neighbor_pair_count, 2);
        assert!(light_vertices(&g, -1.0).is_err());
    }

    #[test]
    fn prop_a_examples() {
        let r = check_prop_a(&Graph::complete(8), CheckParams::new(0.2, 0.2, 0.1)).unwrap();
        assert!(matches!(r.get("a"), Some(Verdict::Fails { witness: Witness::MinDegree { .. }, .. })));
        // two disjoint K5 have no edges between them
        let mut edges = Graph::complete(5).edges().to_vec();
        edges.extend(Graph::complete(5).edges().iter().map(|&(u, v)| (u + 5, v + 5)));
        let g = Graph::from_edges(10, edges).unwrap();
        let r = check_prop_a(&g, CheckParams::new(0.5, 0.5, 0.1)).unwrap();
        match r.get("c") {
            Some(Verdict::Fails { witness: Witness::SparsePair { s, s_prime, crossing, .. }, .. }) => {
                assert_eq!(*crossing, 0);
                assert_eq!(g.edges_between(s, s_prime).unwrap(), 0);
            }
            other => panic!("{other:?}"),
        }
        assert!(check_prop_a(&g, CheckParams::new(0.0, 0.5, 0.1)).is_err());
    }

    #[test]
    fn prop_b_examples() {
        let r = check_prop_b(&Graph::complete(9), CheckParams::new(0.3, 0.3, 0.3)).unwrap();
        assert!(r.get("a'").unwrap().holds());
        assert!(r.get("d'").unwrap().holds());
        // two K4 joined by a bridge: t = min(3, 26/14) > 1 = λ
        let mut edges = Graph::complete(4).edges().to_vec();
        edges.extend(Graph::complete(4).edges().iter().map(|&(u, v)| (u + 4, v + 4)));
        edges.push((3, 4));
        let g = Graph::from_edges(8, edges).unwrap();
        let r = check_prop_b(&g, CheckParams::new(0.3, 0.3, 0.3)).unwrap();
        match r.get("d'") {
            Some(Verdict::Fails { witness: Witness::SmallCut { side, crossing, .. }, .. }) => {
                assert_eq!(*crossing, 1);
                assert_eq!(side.len(), 4);
            }
            other => panic!("{other:?}"),
        }
        let r = check_prop_b(&Graph::cycle(12), CheckParams::new(0.3, 0.3, 0.3)).unwrap();
        assert!(r.get("d'").unwrap().holds());
    }

    #[test]
    fn large_graph_uses_labelled_methods() {
        let g = crate::random::gen_gnp(60, 0.3, RngSeed::new(4, 0)).unwrap();
        let r = check_prop_b(&g, CheckParams::new(0.5, 0.2, 0.1)).unwrap();
        for c in &r.conditions {
            match &c.verdict {
                Verdict::Holds { method } | Verdict::Approximate { method } | Verdict::Fails { method, .. } => {
                    assert!(!method.is_empty())
                }
            }
        }
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"verdict\""));
    }
}
