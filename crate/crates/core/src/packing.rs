//! Spanning-tree packing number with constructive packings and partition
//! certificates.

use std::fmt;

use serde::Serialize;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::forests::ForestEngine;
use crate::graph::{Edge, Graph, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    /// Pairwise edge-disjoint spanning trees.
    Packing,
    /// Forests partitioning the whole edge set.
    Cover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForestDecomposition {
    pub kind: DecompositionKind,
    pub forests: Vec<Vec<Edge>>,
}

impl ForestDecomposition {
    pub fn len(&self) -> usize {
        self.forests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forests.is_empty()
    }

    pub(crate) fn from_ids(g: &Graph, kind: DecompositionKind, forests: Vec<Vec<u32>>) -> Self {
        let forests = forests
            .into_iter()
            .map(|f| f.into_iter().map(|e| g.edges()[e as usize]).collect())
            .collect();
        Self { kind, forests }
    }

    /// Edge ids in `g` for each forest; `None` if some edge is missing.
    pub(crate) fn to_ids(&self, g: &Graph) -> Option<Vec<Vec<u32>>> {
        self.forests
            .iter()
            .map(|f| f.iter().map(|&(u, v)| g.edge_id(u, v).map(|e| e as u32)).collect())
            .collect()
    }
}

/// Why a decomposition failed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidDecomposition(pub String);

impl fmt::Display for InvalidDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InvalidDecomposition {}

/// A partition violating m(𝒫) ≥ t(|𝒫| − 1), which rules out t
/// edge-disjoint spanning trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub partition: Partition,
    pub t: usize,
    pub crossing: usize,
}

impl PartitionCertificate {
    /// Recomputes m(𝒫) and accepts only a genuine violation.
    pub fn new(g: &Graph, partition: Partition, t: usize) -> Result<Self> {
        let crossing = g.crossing_edges(&partition)?;
        let cert = Self { partition, t, crossing };
        if cert.violates() {
            Ok(cert)
        } else {
            Err(Error::InvalidPartition(format!(
                "m(P) = {crossing} >= {t} * ({} - 1), not a certificate",
                cert.partition.len()
            )))
        }
    }

    pub fn violates(&self) -> bool {
        !self.partition.is_empty() && self.crossing < self.t * (self.partition.len() - 1)
    }

    /// Re-checks the certificate against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        g.crossing_edges(&self.partition).map(|c| c == self.crossing).unwrap_or(false) && self.violates()
    }

    /// ⌊m(𝒫) / (|𝒫| − 1)⌋, the upper bound on T(G) this partition gives.
    pub fn bound(&self) -> usize {
        self.crossing / (self.partition.len() - 1)
    }
}

#[derive(Clone, Debug)]
pub enum Packing {
    Trees(ForestDecomposition),
    Infeasible(PartitionCertificate),
}

#[derive(Clone, Debug)]
pub struct StpResult {
    pub t: usize,
    pub packing: ForestDecomposition,
    /// Certificate that T + 1 trees do not exist.
    pub certificate: Option<PartitionCertificate>,
}

enum Attempt {
    Success(Vec<Vec<u32>>),
    Failure { cert: PartitionCertificate, forests: Vec<Vec<u32>> },
}

fn trivial_certificate(g: &Graph, k: usize) -> Option<PartitionCertificate> {
    let n = g.n();
    if g.m() < k * (n - 1) {
        return PartitionCertificate::new(g, Partition::singletons(n), k).ok();
    }
    let degrees = g.degrees();
    let (v, &d) = degrees.iter().enumerate().min_by_key(|&(_, d)| *d)?;
    if d < k {
        let rest = (0..n as u32).filter(|&w| w as usize != v).collect();
        let p = Partition::new(n, vec![vec![v as u32], rest]).ok()?;
        return PartitionCertificate::new(g, p, k).ok();
    }
    None
}

fn attempt(g: &Graph, k: usize, warm: &[Vec<u32>]) -> Attempt {
    let n = g.n();
    if let Some(cert) = trivial_certificate(g, k) {
        return Attempt::Failure { cert, forests: warm.to_vec() };
    }
    let target = k * (n - 1);
    let mut eng = ForestEngine::new(n, g.edges().to_vec(), k, true);
    for (f, forest) in warm.iter().take(k).enumerate() {
        for &e in forest {
            eng.seed(e, f);
        }
    }
    for e in 0..g.m() as u32 {
        if eng.owned() == target {
            break;
        }
        if eng.owner(e).is_none() {
            let _ = eng.try_insert(e);
        }
    }
    let forests: Vec<Vec<u32>> = (0..k).map(|f| eng.forest_edges(f)).collect();
    if eng.owned() == target {
        return Attempt::Success(forests);
    }
    let classes = eng.clump_classes().expect("clumps tracked");
    let partition = Partition::new(n, classes).expect("clump classes partition the vertices");
    let cert = PartitionCertificate::new(g, partition, k)
        .expect("saturated clumps violate the partition condition");
    Attempt::Failure { cert, forests }
}

fn check_n(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        Err(Error::TooFewVertices { n: g.n(), required: 2 })
    } else {
        Ok(())
    }
}

/// Decides whether `g` has `k` edge-disjoint spanning trees.
pub fn pack_k_trees(g: &Graph, k: usize) -> Result<Packing> {
    check_n(g)?;
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    Ok(match attempt(g, k, &[]) {
        Attempt::Success(trees) => Packing::Trees(ForestDecomposition::from_ids(g, DecompositionKind::Packing, trees)),
        Attempt::Failure { cert, .. } => Packing::Infeasible(cert),
    })
}

/// T(G) with a packing of T trees and a certificate against T + 1.
pub fn stp_number(g: &Graph) -> Result<StpResult> {
    stp_number_from(g, None)
}

/// As [`stp_number`], seeding the search with trees known to be in `g`
/// (e.g. a packing of a subgraph). The result does not depend on the hint.
pub fn stp_number_from(g: &Graph, hint: Option<&ForestDecomposition>) -> Result<StpResult> {
    check_n(g)?;
    let n = g.n();
    let comps = g.components();
    if comps.len() > 1 {
        let p = Partition::new(n, comps)?;
        let certificate = PartitionCertificate::new(g, p, 1)?;
        return Ok(StpResult {
            t: 0,
            packing: ForestDecomposition { kind: DecompositionKind::Packing, forests: Vec::new() },
            certificate: Some(certificate),
        });
    }
    let mut warm: Vec<Vec<u32>> = hint.and_then(|h| h.to_ids(g)).unwrap_or_default();
    let mut bound = g.min_degree()?.min(g.m() / (n - 1));
    let mut last_failure: Option<PartitionCertificate> = None;
    loop {
        match attempt(g, bound, &warm) {
            Attempt::Success(trees) => {
                let certificate = last_failure.or_else(|| trivial_certificate(g, bound + 1));
                debug_assert!(certificate.as_ref().is_none_or(|c| c.t > bound && c.bound() == bound));
                let certificate = certificate.map(|c| PartitionCertificate { t: bound + 1, ..c });
                return Ok(StpResult {
                    t: bound,
                    packing: ForestDecomposition::from_ids(g, DecompositionKind::Packing, trees),
                    certificate,
                });
            }
            Attempt::Failure { cert, mut forests } => {
                let next = cert.bound();
                assert!(next < bound, "certificate must lower the bound");
                forests.sort_by_key(|f| std::cmp::Reverse(f.len()));
                forests.truncate(next);
                warm = forests;
                bound = next;
                last_failure = Some(cert);
            }
        }
    }
}

/// min over partitions with at least two classes of ⌊m(𝒫)/(|𝒫| − 1)⌋, by
/// enumerating every set partition. Oracle for n ≤ 12.
pub fn brute_force_stp(g: &Graph) -> Result<usize> {
    const LIMIT: usize = 12;
    let n = g.n();
    if n > LIMIT {
        return Err(Error::OracleTooLarge { n, limit: LIMIT });
    }
    check_n(g)?;
    let mut best = usize::MAX;
    for_each_partition(n, |label, blocks| {
        if blocks >= 2 {
            let crossing = g.edges().iter().filter(|&&(u, v)| label[u as usize] != label[v as usize]).count();
            best = best.min(crossing / (blocks - 1));
        }
    });
    Ok(best)
}

/// Calls `f(labels, block_count)` for every set partition of `0..n`, as
/// restricted growth strings.
pub(crate) fn for_each_partition<F: FnMut(&[u8], usize)>(n: usize, mut f: F) {
    if n == 0 {
        return;
    }
    let mut label = vec![0u8; n];
    // max label among prefix [0..i]
    let mut prefix_max = vec![0u8; n];
    loop {
        f(&label, prefix_max[n - 1] as usize + 1);
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if label[i] <= prefix_max[i - 1] {
                label[i] += 1;
                prefix_max[i] = prefix_max[i - 1].max(label[i]);
                for j in i + 1..n {
                    label[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Checks that every forest is a spanning tree of `g` and that no edge is
/// used twice.
pub fn verify_packing(g: &Graph, fd: &ForestDecomposition) -> Result<(), InvalidDecomposition> {
    if fd.kind != DecompositionKind::Packing {
        return Err(InvalidDecomposition("decomposition is not a packing".into()));
    }
    let n = g.n();
    let mut used = vec![false; g.m()];
    for (i, tree) in fd.forests.iter().enumerate() {
        if tree.len() + 1 != n {
            return Err(InvalidDecomposition(format!(
                "forest {i} has {} edges, a spanning tree needs {}",
                tree.len(),
                n.saturating_sub(1)
            )));
        }
        let mut uf = UnionFind::new(n);
        for &(u, v) in tree {
            let e = g
                .edge_id(u, v)
                .ok_or_else(|| InvalidDecomposition(format!("forest {i}: ({u}, {v}) is not an edge")))?;
            if std::mem::replace(&mut used[e], true) {
                return Err(InvalidDecomposition(format!("edge ({u}, {v}) used twice")));
            }
            if !uf.union(u, v) {
                return Err(InvalidDecomposition(format!("forest {i} contains a cycle")));
            }
        }
    }
    Ok(())
}
