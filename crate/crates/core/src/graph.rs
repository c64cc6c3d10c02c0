//! Immutable simple graphs with sorted in/out adjacency.
//!
//! Vertices are `0..n`. An undirected graph is stored as the symmetric directed
//! graph, so every undirected edge `{u, v}` appears as both `(u, v)` and `(v, u)`
//! and in- and out-adjacency coincide.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{Float, FromPrimitive};

use crate::error::GraphError;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Directedness {
    Directed,
    Undirected,
}

/// Compressed adjacency: `targets[offsets[v]..offsets[v + 1]]`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    /// `pairs` must be sorted by `(key, value)` and deduplicated.
    fn from_sorted(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(k, _) in pairs {
            offsets[k + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.iter().map(|&(_, v)| v).collect();
        Self { offsets, targets }
    }

    #[inline]
    fn row(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    directedness: Directedness,
    in_adj: Csr,
    // `None` for undirected graphs, where out-adjacency equals in-adjacency.
    out_adj: Option<Csr>,
}

impl Graph {
    /// Builds a simple graph. Duplicate edges are collapsed; for undirected
    /// graphs each listed edge is symmetrized. Self-loops and out-of-range
    /// endpoints are rejected.
    pub fn new<I>(n: usize, edges: I, directedness: Directedness) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            arcs.push((u, v));
            if directedness == Directedness::Undirected {
                arcs.push((v, u));
            }
        }
        // in-adjacency keyed by head
        let mut by_head: Vec<(usize, usize)> = arcs.iter().map(|&(u, v)| (v, u)).collect();
        by_head.sort_unstable();
        by_head.dedup();
        let in_adj = Csr::from_sorted(n, &by_head);
        let out_adj = match directedness {
            Directedness::Undirected => None,
            Directedness::Directed => {
                arcs.sort_unstable();
                arcs.dedup();
                Some(Csr::from_sorted(n, &arcs))
            }
        };
        Ok(Self { n, directedness, in_adj, out_adj })
    }

    pub fn undirected<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self, GraphError> {
        Self::new(n, edges, Directedness::Undirected)
    }

    pub fn directed<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self, GraphError> {
        Self::new(n, edges, Directedness::Directed)
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directedness == Directedness::Directed
    }

    /// Number of ordered pairs `(u, v)` in the edge set.
    pub fn arc_count(&self) -> usize {
        self.in_adj.targets.len()
    }

    /// Number of edges as a user would count them: arcs for directed graphs,
    /// unordered pairs for undirected ones.
    pub fn edge_count(&self) -> usize {
        match self.directedness {
            Directedness::Directed => self.arc_count(),
            Directedness::Undirected => self.arc_count() / 2,
        }
    }

    /// In-neighbors of `v`, ascending.
    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        self.in_adj.row(v)
    }

    /// Out-neighbors of `v`, ascending.
    #[inline]
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        self.out_adj.as_ref().unwrap_or(&self.in_adj).row(v)
    }

    /// Neighbors of `v` in an undirected graph (same as [`Graph::in_neighbors`]).
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.in_neighbors(v)
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj.offsets[v + 1] - self.in_adj.offsets[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.in_degree(v)
    }

    pub fn in_neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_vertices(self.n, self.in_neighbors(v).iter().copied())
    }

    /// `N^in(A)`: every vertex with an edge into `A`.
    pub fn in_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in set.iter() {
            for &u in self.in_neighbors(v) {
                out.insert(u);
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.in_neighbors(v).binary_search(&u).is_ok()
    }

    /// All ordered pairs `(u, v)`, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> =
            (0..self.n).flat_map(|u| self.out_neighbors(u).iter().map(move |&v| (u, v))).collect();
        arcs.sort_unstable();
        arcs
    }

    /// Canonical edge list: arcs for directed graphs, pairs `u < v` for
    /// undirected ones, sorted lexicographically.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        match self.directedness {
            Directedness::Directed => self.arcs(),
            Directedness::Undirected => (0..self.n)
                .flat_map(|u| self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
                .collect(),
        }
    }

    fn require_undirected(&self) -> Result<(), GraphError> {
        if self.is_directed() {
            Err(GraphError::Directed)
        } else {
            Ok(())
        }
    }

    /// `N^i[U]`: vertices at distance at most `radius` from some member of `sources`.
    pub fn ball(&self, sources: &VertexSet, radius: usize) -> Result<VertexSet, GraphError> {
        self.require_undirected()?;
        if sources.universe() != self.n {
            return Err(GraphError::SizeMismatch { expected: self.n, actual: sources.universe() });
        }
        let mut reached = sources.clone();
        let mut frontier: Vec<usize> = sources.iter().collect();
        for _ in 0..radius {
            if frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if reached.insert(w) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        Ok(reached)
    }

    /// BFS distances from `source`; `None` for unreachable vertices. Follows out-edges.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in self.out_neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected-component label per vertex, labels numbered in order of
    /// their smallest vertex.
    pub fn components(&self) -> Result<Vec<usize>, GraphError> {
        self.require_undirected()?;
        Ok(component_labels(self.n, |v| self.neighbors(v)))
    }

    pub fn is_connected(&self) -> Result<bool, GraphError> {
        Ok(self.components()?.iter().all(|&c| c == 0))
    }

    /// Exact diameter by BFS from every vertex. `Ok(None)` means disconnected.
    ///
    /// Sources are processed 64 at a time: each vertex carries a `u64` of
    /// which sources have reached it, so one sweep over the edges advances
    /// 64 breadth-first searches by one level.
    pub fn diameter(&self) -> Result<Option<usize>, GraphError> {
        self.require_undirected()?;
        let n = self.n;
        let mut seen = vec![0u64; n];
        let mut frontier = vec![0u64; n];
        let mut next = vec![0u64; n];
        let mut diameter = 0usize;
        for batch_start in (0..n).step_by(64) {
            let batch = (n - batch_start).min(64);
            let full = if batch == 64 { u64::MAX } else { (1u64 << batch) - 1 };
            seen.fill(0);
            frontier.fill(0);
            for i in 0..batch {
                seen[batch_start + i] = 1u64 << i;
                frontier[batch_start + i] = 1u64 << i;
            }
            let mut level = 0usize;
            loop {
                let mut advanced = false;
                for v in 0..n {
                    let mut acc = 0u64;
                    for &u in self.neighbors(v) {
                        acc |= frontier[u];
                    }
                    acc &= !seen[v];
                    next[v] = acc;
                    advanced |= acc != 0;
                }
                if !advanced {
                    break;
                }
                level += 1;
                for v in 0..n {
                    seen[v] |= next[v];
                }
                std::mem::swap(&mut frontier, &mut next);
            }
            if seen.iter().any(|&s| s != full) {
                return Ok(None);
            }
            diameter = diameter.max(level);
        }
        Ok(Some(diameter))
    }

    /// Map from degree to the number of vertices with that degree.
    pub fn degree_histogram(&self) -> Result<BTreeMap<usize, usize>, GraphError> {
        self.require_undirected()?;
        let mut hist = BTreeMap::new();
        for v in 0..self.n {
            *hist.entry(self.degree(v)).or_insert(0) += 1;
        }
        Ok(hist)
    }

    /// Smallest `C` with `|{v : d(v) = k}| / n <= C / k^gamma` for every `k >= 1`,
    /// i.e. the maximum over occurring degrees `k >= 1` of `(count_k / n) * k^gamma`.
    pub fn empirical_tail_constant<F: Float + FromPrimitive>(&self, gamma: F) -> Result<F, GraphError> {
        let hist = self.degree_histogram()?;
        Ok(tail_constant_of_histogram(&hist, self.n, gamma))
    }
}

/// Tail constant of a degree histogram over `n` vertices; degree 0 is ignored.
pub fn tail_constant_of_histogram<F: Float + FromPrimitive>(hist: &BTreeMap<usize, usize>, n: usize, gamma: F) -> F {
    let n = F::from_usize(n).unwrap();
    hist.iter()
        .filter(|(&k, _)| k >= 1)
        .map(|(&k, &count)| F::from_usize(count).unwrap() / n * F::from_usize(k).unwrap().powf(gamma))
        .fold(F::zero(), F::max)
}

pub(crate) fn component_labels<'a, F>(n: usize, neighbors: F) -> Vec<usize>
where
    F: Fn(usize) -> &'a [usize],
{
    let mut label = vec![usize::MAX; n];
    let mut next_label = 0;
    let mut stack = Vec::new();
    for root in 0..n {
        if label[root] != usize::MAX {
            continue;
        }
        label[root] = next_label;
        stack.push(root);
        while let Some(u) = stack.pop() {
            for &w in neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = next_label;
                    stack.push(w);
                }
            }
        }
        next_label += 1;
    }
    label
}
