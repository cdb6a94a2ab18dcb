//! Matroid partition over k copies of the graphic matroid.
//!
//! The engine keeps k edge-disjoint forests and inserts edges one at a time.
//! An insertion that cannot go straight into a forest runs a breadth-first
//! labelling search over the exchange graph: a labelled edge `x` scanned
//! against forest `F_i` labels the unlabelled edges of the `F_i`-path between
//! its endpoints (each of them could be swapped out of `F_i` for `x`). The
//! first labelled edge that joins two components of some other forest ends
//! the search, and the label chain is applied as a sequence of swaps.
//! Because labels are assigned in BFS order the chain is a shortest
//! augmenting path, which keeps every forest acyclic after the swaps.
//!
//! Path walks use per-forest rooted trees plus a per-search union-find over
//! labelled forest edges, so an edge is walked over at most once per search
//! and forest (Roskind–Tarjan). Swaps never change the vertex partition of a
//! forest into components; only the final insertion merges two components,
//! which lets each forest keep a monotone union-find for its components.
//!
//! When a search fails, the labelled edges span a vertex set `C` ("clump")
//! on which every forest already contains a spanning tree. That stays true
//! for as long as the number of forests is fixed, so later edges inside a
//! clump are rejected without a search.

use std::collections::VecDeque;

use crate::dsu::UnionFind;
use crate::graph::{Edge, Vertex};

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Forest {
    adj: Vec<Vec<(Vertex, u32)>>,
    comp: UnionFind,
    parent: Vec<u32>,
    parent_edge: Vec<u32>,
    depth: Vec<u32>,
    size: usize,
}

impl Forest {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            comp: UnionFind::new(n),
            parent: vec![NONE; n],
            parent_edge: vec![NONE; n],
            depth: vec![0; n],
            size: 0,
        }
    }

    fn root_of(&self, mut v: u32) -> u32 {
        while self.parent[v as usize] != NONE {
            v = self.parent[v as usize];
        }
        v
    }

    fn link_adj(&mut self, e: u32, (u, v): Edge) {
        self.adj[u as usize].push((v, e));
        self.adj[v as usize].push((u, e));
        self.size += 1;
    }

    fn unlink_adj(&mut self, e: u32, (u, v): Edge) {
        for x in [u, v] {
            let list = &mut self.adj[x as usize];
            let i = list.iter().position(|&(_, f)| f == e).expect("edge present in forest");
            list.swap_remove(i);
        }
        self.size -= 1;
    }

    /// Re-derives parent/depth for the tree containing `root`, rooted there.
    fn reroot(&mut self, root: u32, visit: &mut [u32], stamp: u32, stack: &mut Vec<u32>) {
        self.parent[root as usize] = NONE;
        self.parent_edge[root as usize] = NONE;
        self.depth[root as usize] = 0;
        visit[root as usize] = stamp;
        stack.clear();
        stack.push(root);
        while let Some(u) = stack.pop() {
            let du = self.depth[u as usize];
            for i in 0..self.adj[u as usize].len() {
                let (w, e) = self.adj[u as usize][i];
                if visit[w as usize] == stamp {
                    continue;
                }
                visit[w as usize] = stamp;
                self.parent[w as usize] = u;
                self.parent_edge[w as usize] = e;
                self.depth[w as usize] = du + 1;
                stack.push(w);
            }
        }
    }

    /// Inserts `e = (a, b)` joining two trees, re-hanging the smaller tree.
    fn insert_joining(&mut self, e: u32, (a, b): Edge, stack: &mut Vec<u32>) {
        let (low, high) = if self.comp.set_size(a) <= self.comp.set_size(b) { (a, b) } else { (b, a) };
        self.parent[low as usize] = high;
        self.parent_edge[low as usize] = e;
        self.depth[low as usize] = self.depth[high as usize] + 1;
        stack.clear();
        stack.push(low);
        while let Some(u) = stack.pop() {
            let pu = self.parent[u as usize];
            let du = self.depth[u as usize];
            for i in 0..self.adj[u as usize].len() {
                let (w, f) = self.adj[u as usize][i];
                if w == pu {
                    continue;
                }
                self.parent[w as usize] = u;
                self.parent_edge[w as usize] = f;
                self.depth[w as usize] = du + 1;
                stack.push(w);
            }
        }
        self.link_adj(e, (a, b));
        self.comp.union(a, b);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Insert {
    Placed,
    /// Both endpoints already lie in one clump.
    Rejected,
    /// Search saturated; vertex set of the labelled edges (sorted).
    Failed(Vec<Vertex>),
}

pub(crate) struct ForestEngine {
    n: usize,
    ends: Vec<Edge>,
    forests: Vec<Forest>,
    owner: Vec<u32>,
    owned: usize,
    clumps: Option<UnionFind>,
    search: u32,
    edge_mark: Vec<u32>,
    edge_from: Vec<u32>,
    lab_parent: Vec<u32>,
    lab_top: Vec<u32>,
    lab_mark: Vec<u32>,
    queue: VecDeque<u32>,
    labeled: Vec<u32>,
    visit: Vec<u32>,
    visit_stamp: u32,
    stack: Vec<u32>,
}

impl ForestEngine {
    pub fn new(n: usize, ends: Vec<Edge>, k: usize, track_clumps: bool) -> Self {
        let m = ends.len();
        Self {
            n,
            ends,
            forests: (0..k).map(|_| Forest::new(n)).collect(),
            owner: vec![NONE; m],
            owned: 0,
            clumps: track_clumps.then(|| UnionFind::new(n)),
            search: 0,
            edge_mark: vec![0; m],
            edge_from: vec![NONE; m],
            lab_parent: vec![0; k * n],
            lab_top: vec![0; k * n],
            lab_mark: vec![0; k * n],
            queue: VecDeque::new(),
            labeled: Vec::new(),
            visit: vec![0; n],
            visit_stamp: 0,
            stack: Vec::new(),
        }
    }

    /// Appends an edge (unassigned) and returns its id.
    pub fn push_edge(&mut self, e: Edge) -> u32 {
        self.ends.push(e);
        self.owner.push(NONE);
        self.edge_mark.push(0);
        self.edge_from.push(NONE);
        self.ends.len() as u32 - 1
    }

    pub fn k(&self) -> usize {
        self.forests.len()
    }

    pub fn owned(&self) -> usize {
        self.owned
    }

    pub fn owner(&self, e: u32) -> Option<usize> {
        let o = self.owner[e as usize];
        (o != NONE).then_some(o as usize)
    }

    /// Adds an empty forest. Clumps are no longer spanned by every forest,
    /// so clump tracking restarts.
    pub fn add_forest(&mut self) {
        self.forests.push(Forest::new(self.n));
        let k = self.forests.len();
        self.lab_parent.resize(k * self.n, 0);
        self.lab_top.resize(k * self.n, 0);
        self.lab_mark.resize(k * self.n, 0);
        if self.clumps.is_some() {
            self.clumps = Some(UnionFind::new(self.n));
        }
    }

    /// Places `e` directly into forest `f`; false if it would close a cycle.
    pub fn seed(&mut self, e: u32, f: usize) -> bool {
        let ends = self.ends[e as usize];
        if self.owner[e as usize] != NONE || self.forests[f].comp.same(ends.0, ends.1) {
            return false;
        }
        self.forests[f].insert_joining(e, ends, &mut self.stack);
        self.owner[e as usize] = f as u32;
        self.owned += 1;
        true
    }

    pub fn forest_edges(&self, f: usize) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.owner.len() as u32).filter(|&e| self.owner[e as usize] == f as u32).collect();
        out.sort_unstable();
        out
    }

    #[cfg(test)]
    pub fn forest_size(&self, f: usize) -> usize {
        self.forests[f].size
    }

    /// Clump classes (sorted, singletons included); `None` without tracking.
    pub fn clump_classes(&mut self) -> Option<Vec<Vec<Vertex>>> {
        self.clumps.as_mut().map(UnionFind::classes)
    }

    pub fn try_insert(&mut self, e: u32) -> Insert {
        debug_assert_eq!(self.owner[e as usize], NONE);
        let (a, b) = self.ends[e as usize];
        if let Some(c) = self.clumps.as_mut() {
            if c.same(a, b) {
                return Insert::Rejected;
            }
        }
        for f in 0..self.forests.len() {
            if !self.forests[f].comp.same(a, b) {
                self.forests[f].insert_joining(e, (a, b), &mut self.stack);
                self.owner[e as usize] = f as u32;
                self.owned += 1;
                return Insert::Placed;
            }
        }
        self.next_search();
        self.edge_mark[e as usize] = self.search;
        self.edge_from[e as usize] = NONE;
        self.queue.clear();
        self.labeled.clear();
        self.queue.push_back(e);
        self.labeled.push(e);
        let k = self.forests.len();
        while let Some(x) = self.queue.pop_front() {
            let (xa, xb) = self.ends[x as usize];
            let fx = self.owner[x as usize];
            for f in 0..k {
                if f as u32 == fx {
                    continue;
                }
                let mut u = self.lab_top_of(f, xa);
                let mut v = self.lab_top_of(f, xb);
                while u != v {
                    let forest = &self.forests[f];
                    if forest.depth[u as usize] < forest.depth[v as usize] {
                        std::mem::swap(&mut u, &mut v);
                    }
                    let y = forest.parent_edge[u as usize];
                    let p = forest.parent[u as usize];
                    debug_assert!(y != NONE, "walk left the tree");
                    self.lab_link(f, u, p);
                    self.edge_mark[y as usize] = self.search;
                    self.edge_from[y as usize] = x;
                    self.labeled.push(y);
                    let (ya, yb) = self.ends[y as usize];
                    for g in 0..k {
                        if g != f && !self.forests[g].comp.same(ya, yb) {
                            self.augment(y, g);
                            return Insert::Placed;
                        }
                    }
                    self.queue.push_back(y);
                    u = self.lab_top_of(f, p);
                }
            }
        }
        let mut verts: Vec<Vertex> = Vec::with_capacity(self.labeled.len() * 2);
        for &x in &self.labeled {
            let (p, q) = self.ends[x as usize];
            verts.push(p);
            verts.push(q);
        }
        verts.sort_unstable();
        verts.dedup();
        if let Some(c) = self.clumps.as_mut() {
            for w in verts.windows(2) {
                c.union(w[0], w[1]);
            }
        }
        Insert::Failed(verts)
    }

    fn next_search(&mut self) {
        if self.search == u32::MAX {
            self.search = 0;
            self.edge_mark.fill(0);
            self.lab_mark.fill(0);
        }
        self.search += 1;
    }

    fn lab_find(&mut self, f: usize, v: u32) -> u32 {
        let base = f * self.n;
        let mut x = v;
        loop {
            let i = base + x as usize;
            if self.lab_mark[i] != self.search {
                self.lab_mark[i] = self.search;
                self.lab_parent[i] = x;
                self.lab_top[i] = x;
                return x;
            }
            let p = self.lab_parent[i];
            if p == x {
                return x;
            }
            let gp = self.lab_parent[base + p as usize];
            self.lab_parent[i] = gp;
            x = p;
        }
    }

    fn lab_top_of(&mut self, f: usize, v: u32) -> u32 {
        let r = self.lab_find(f, v);
        self.lab_top[f * self.n + r as usize]
    }

    /// Joins the labelled component topped by `child` with that of its parent.
    fn lab_link(&mut self, f: usize, child: u32, parent: u32) {
        let rc = self.lab_find(f, child);
        let rp = self.lab_find(f, parent);
        self.lab_parent[f * self.n + rc as usize] = rp;
    }

    fn augment(&mut self, last: u32, sink: usize) {
        let mut chain = Vec::new();
        let mut cur = last;
        while cur != NONE {
            chain.push(cur);
            cur = self.edge_from[cur as usize];
        }
        // (edge, old forest, new forest)
        let mut moves = Vec::with_capacity(chain.len());
        let mut into = sink as u32;
        for &z in &chain {
            let old = self.owner[z as usize];
            moves.push((z, old, into));
            into = old;
        }
        let mut roots: Vec<(u32, u32)> = Vec::with_capacity(moves.len() + 1);
        for (j, &(z, _, new)) in moves.iter().enumerate() {
            let (a, b) = self.ends[z as usize];
            let forest = &self.forests[new as usize];
            roots.push((new, forest.root_of(a)));
            if j == 0 {
                roots.push((new, forest.root_of(b)));
            }
        }
        for &(z, old, new) in &moves {
            let ends = self.ends[z as usize];
            if old != NONE {
                self.forests[old as usize].unlink_adj(z, ends);
            }
            self.forests[new as usize].link_adj(z, ends);
            self.owner[z as usize] = new;
        }
        let (a, b) = self.ends[last as usize];
        self.forests[sink].comp.union(a, b);
        self.owned += 1;

        roots.sort_unstable();
        roots.dedup();
        let mut i = 0;
        while i < roots.len() {
            let f = roots[i].0;
            self.visit_stamp = self.visit_stamp.wrapping_add(1);
            if self.visit_stamp == 0 {
                self.visit.fill(0);
                self.visit_stamp = 1;
            }
            while i < roots.len() && roots[i].0 == f {
                let r = roots[i].1;
                if self.visit[r as usize] != self.visit_stamp {
                    self.forests[f as usize].reroot(r, &mut self.visit, self.visit_stamp, &mut self.stack);
                }
                i += 1;
            }
        }
    }

    /// Structural self-check used by tests.
    #[cfg(test)]
    pub fn check(&self) {
        for (fi, f) in self.forests.iter().enumerate() {
            let mut uf = UnionFind::new(self.n);
            let mut count = 0;
            for (e, &o) in self.owner.iter().enumerate() {
                if o == fi as u32 {
                    let (a, b) = self.ends[e];
                    assert!(uf.union(a, b), "forest {fi} has a cycle");
                    count += 1;
                }
            }
            assert_eq!(count, f.size);
            let mut comp = f.comp.clone();
            for v in 0..self.n as u32 {
                for w in 0..self.n as u32 {
                    assert_eq!(uf.same(v, w), comp.same(v, w));
                }
                let p = f.parent[v as usize];
                if p != NONE {
                    assert_eq!(f.depth[v as usize], f.depth[p as usize] + 1);
                    let e = f.parent_edge[v as usize];
                    assert_eq!(self.owner[e as usize], fi as u32);
                    let (a, b) = self.ends[e as usize];
                    assert!((a == v && b == p) || (a == p && b == v));
                }
            }
        }
    }
}
