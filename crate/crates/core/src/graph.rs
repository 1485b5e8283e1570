//! Undirected site graphs, neighbourhoods, cliques and separator triples.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type VertexSet = BTreeSet<usize>;

/// Default bound on `|A|` when enumerating separator triples.
pub const DEFAULT_MAX_A: usize = 2;

/// Vertices carry a local dimension (arity or Hilbert-space dimension).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct SiteGraph {
    local_dims: Vec<usize>,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<VertexSet>,
}

/// On-disk form: `{"vertices": n, "local_dims": [...], "edges": [[i, j], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    local_dims: Vec<usize>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphFile> for SiteGraph {
    type Error = Error;
    fn try_from(f: GraphFile) -> Result<Self> {
        if f.local_dims.len() != f.vertices {
            return Err(Error::validation(format!(
                "graph declares {} vertices but {} local dims",
                f.vertices,
                f.local_dims.len()
            )));
        }
        SiteGraph::new(f.local_dims, f.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<SiteGraph> for GraphFile {
    fn from(g: SiteGraph) -> Self {
        GraphFile {
            vertices: g.vertex_count(),
            local_dims: g.local_dims,
            edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl SiteGraph {
    pub fn new(local_dims: Vec<usize>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = local_dims.len();
        if n == 0 {
            return Err(Error::validation("graph needs at least one vertex"));
        }
        if let Some(v) = local_dims.iter().position(|&d| d < 2) {
            return Err(Error::validation(format!("vertex {v} has local dimension below 2")));
        }
        let mut set = BTreeSet::new();
        let mut adjacency = vec![VertexSet::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::validation(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(Error::validation(format!("self-loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::validation(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        Ok(Self {
            local_dims,
            edges: set,
            adjacency,
        })
    }

    /// Path `0 - 1 - ... - (n-1)` with uniform local dimension.
    pub fn path(n: usize, local_dim: usize) -> Result<Self> {
        Self::new(vec![local_dim; n], (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete(n: usize, local_dim: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j)));
        Self::new(vec![local_dim; n], edges)
    }

    /// `rows x cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize, local_dim: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::new(vec![local_dim; rows * cols], edges)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.local_dims.len()
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    /// Edges as `(smaller, larger)` pairs in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn adjacent(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn vertices(&self) -> VertexSet {
        (0..self.vertex_count()).collect()
    }

    pub(crate) fn check_vertices<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Result<()> {
        for &v in set {
            if v >= self.vertex_count() {
                return Err(Error::validation(format!(
                    "vertex {v} out of range for {} vertices",
                    self.vertex_count()
                )));
            }
        }
        Ok(())
    }

    /// Every pair of `set` is adjacent. Singletons are cliques; the empty set
    /// is not.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        if set.is_empty() || set.iter().any(|&v| v >= self.vertex_count()) {
            return false;
        }
        let vs: Vec<usize> = set.iter().copied().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        let reached = self.flood_fill(start, |v| set.contains(&v));
        reached.len() == set.len()
    }

    /// Vertices reachable from `start` through vertices accepted by `allowed`.
    pub fn flood_fill(&self, start: usize, allowed: impl Fn(usize) -> bool) -> VertexSet {
        let mut seen = VertexSet::new();
        if !allowed(start) {
            return seen;
        }
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if allowed(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Whether removing `t.b` disconnects every vertex of `t.a` from `t.c`.
    pub fn separates(&self, t: &SeparatorTriple) -> bool {
        t.a.iter().all(|&start| {
            let reached = self.flood_fill(start, |v| !t.b.contains(&v));
            reached.is_disjoint(&t.c)
        })
    }
}

/// `n(U)`: vertices outside `u` adjacent to some vertex of `u`.
pub fn neighbors(g: &SiteGraph, u: &VertexSet) -> Result<VertexSet> {
    g.check_vertices(u)?;
    Ok(u.iter()
        .flat_map(|&w| g.adjacent(w).iter().copied())
        .filter(|v| !u.contains(v))
        .collect())
}

/// Maximal cliques via Bron–Kerbosch with Tomita pivoting, sorted.
pub fn maximal_cliques(g: &SiteGraph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    bron_kerbosch(g, VertexSet::new(), g.vertices(), VertexSet::new(), &mut out);
    out.sort();
    out
}

fn bron_kerbosch(g: &SiteGraph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .copied()
        .max_by_key(|&u| g.adjacent(u).intersection(&p).count())
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.difference(g.adjacent(pivot)).copied().collect();
    for v in candidates {
        let nv = g.adjacent(v);
        let mut r2 = r.clone();
        r2.insert(v);
        let p2 = p.intersection(nv).copied().collect();
        let x2 = x.intersection(nv).copied().collect();
        bron_kerbosch(g, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}

/// Partition `(A, B, C)` of the vertex set.
///
/// The constructor checks the partition properties only; whether `B`
/// separates `A` from `C` in a particular graph is checked by
/// [`SiteGraph::separates`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeparatorTriple {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

impl SeparatorTriple {
    pub fn new(
        a: impl IntoIterator<Item = usize>,
        b: impl IntoIterator<Item = usize>,
        c: impl IntoIterator<Item = usize>,
        vertex_count: usize,
    ) -> Result<Self> {
        let t = Self {
            a: a.into_iter().collect(),
            b: b.into_iter().collect(),
            c: c.into_iter().collect(),
        };
        t.check_partition(vertex_count)?;
        Ok(t)
    }

    pub fn check_partition(&self, vertex_count: usize) -> Result<()> {
        if self.a.is_empty() || self.c.is_empty() {
            return Err(Error::validation("A and C must be non-empty"));
        }
        let all = [&self.a, &self.b, &self.c];
        let mut seen = vec![false; vertex_count];
        for set in all {
            for &v in set {
                if v >= vertex_count {
                    return Err(Error::validation(format!("vertex {v} out of range for {vertex_count} vertices")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::validation(format!("vertex {v} appears in more than one of A, B, C")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::validation(format!("vertex {v} is in none of A, B, C")));
        }
        Ok(())
    }
}

/// Triples `(A, n(A), V - A - n(A))` for every connected `A` with
/// `|A| <= max_a` whose complement beyond its neighbourhood is non-empty.
///
/// Output is ordered by `|A|` then lexicographically by `A`.
pub fn separator_triples(g: &SiteGraph, max_a: usize) -> Vec<SeparatorTriple> {
    let all = g.vertices();
    let mut out = Vec::new();
    for a in connected_sets(g, max_a) {
        let b = neighbors(g, &a).expect("connected sets are in range");
        let c: VertexSet = all.iter().filter(|v| !a.contains(v) && !b.contains(v)).copied().collect();
        if !c.is_empty() {
            out.push(SeparatorTriple { a, b, c });
        }
    }
    out
}

/// All connected vertex sets of size `1..=max_size`, grouped by size.
pub fn connected_sets(g: &SiteGraph, max_size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut layer: BTreeSet<VertexSet> = (0..g.vertex_count()).map(|v| VertexSet::from([v])).collect();
    for size in 1..=max_size {
        if layer.is_empty() {
            break;
        }
        out.extend(layer.iter().cloned());
        if size == max_size {
            break;
        }
        let mut next = BTreeSet::new();
        for set in &layer {
            for &v in set {
                for &w in g.adjacent(v) {
                    if !set.contains(&w) {
                        let mut grown = set.clone();
                        grown.insert(w);
                        next.insert(grown);
                    }
                }
            }
        }
        layer = next;
    }
    out
}
