//! Constructive seed sets.
//!
//! Two constructions are provided:
//!
//! * [`highdeg_seeder`]: on a connected undirected graph, seed every vertex of
//!   degree above `1/rho` together with `ceil(rho * d)` of its neighbors (or a
//!   single vertex and one neighbor when no such vertex exists). Every seed then
//!   has at least `ceil(rho * d)` seeded neighbors, so the seeds stay active
//!   forever, and every other vertex needs just one active neighbor. The whole
//!   graph is active by round `diameter`.
//! * [`random_repair_seeder`]: sample each vertex with probability `8 C rho`,
//!   then add every vertex that does not see more than a `rho` fraction of
//!   sampled in-neighbors, together with all of its in-neighbors. The result
//!   activates every vertex in round 1.

use std::fmt;

use rand::Rng;

use crate::error::GraphError;
use crate::fraction::Fraction;
use crate::graph::Graph;
use crate::rng::RngSeed;
use crate::vertex_set::VertexSet;

/// Where a seed set came from, with the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance<R> {
    HighDegreeCore { rho: R },
    RandomRepair { rho: R, c: f64, seed: RngSeed },
    Explicit,
}

impl<R> Provenance<R> {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::HighDegreeCore { .. } => "highdeg",
            Provenance::RandomRepair { .. } => "random-repair",
            Provenance::Explicit => "explicit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet<R> {
    pub vertices: VertexSet,
    pub provenance: Provenance<R>,
    /// Hard upper bound on `vertices.len()` that comes with the construction.
    /// For explicit sets this is just the size.
    pub budget: usize,
    /// Expected-size bound for randomized constructions.
    pub expected_bound: Option<f64>,
}

impl<R> SeedSet<R> {
    pub fn explicit(vertices: VertexSet) -> Self {
        let budget = vertices.len();
        Self { vertices, provenance: Provenance::Explicit, budget, expected_bound: None }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `seeds k: v1 v2 ... vk`, ascending.
pub fn format_seed_line(vertices: &VertexSet) -> String {
    let mut line = format!("seeds {}:", vertices.len());
    for v in vertices.iter() {
        line.push(' ');
        line.push_str(&v.to_string());
    }
    line
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedLineError(pub String);

impl fmt::Display for SeedLineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad seed line: {}", self.0)
    }
}

impl std::error::Error for SeedLineError {}

/// Parses a `seeds k: ...` line over `0..n`.
pub fn parse_seed_line(line: &str, n: usize) -> Result<VertexSet, SeedLineError> {
    let line = line.trim();
    let rest =
        line.strip_prefix("seeds").ok_or_else(|| SeedLineError(format!("expected `seeds k: ...`, got `{line}`")))?;
    let (count, members) = rest.split_once(':').ok_or_else(|| SeedLineError("missing `:`".into()))?;
    let count: usize = count.trim().parse().map_err(|_| SeedLineError(format!("bad count `{}`", count.trim())))?;
    let mut set = VertexSet::empty(n);
    let mut listed = 0;
    for tok in members.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| SeedLineError(format!("bad vertex `{tok}`")))?;
        if v >= n {
            return Err(SeedLineError(format!("vertex {v} outside 0..{n}")));
        }
        set.insert(v);
        listed += 1;
    }
    if listed != count || set.len() != count {
        return Err(SeedLineError(format!("declared {count} seeds, listed {listed} distinct {}", set.len())));
    }
    Ok(set)
}

/// `2 + sum over v with d(v) > 1/rho of (ceil(rho d(v)) + 1)`.
pub fn budget_highdeg<R: Fraction>(g: &Graph, rho: R) -> usize {
    2 + (0..g.n())
        .map(|v| g.degree(v))
        .filter(|&d| rho.exceeds_reciprocal(d))
        .map(|d| rho.min_active(d) + 1)
        .sum::<usize>()
}

/// The vertices of degree above `1/rho`, in ascending order.
pub fn high_degree_core<R: Fraction>(g: &Graph, rho: R) -> VertexSet {
    VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| rho.exceeds_reciprocal(g.degree(v))))
}

/// Preference order for filling `B(v)`: neighbors already seeded, then
/// neighbors in the core, then the rest; ascending id within each group.
pub fn seed_selection_order(g: &Graph, v: usize, chosen: &VertexSet, core: &VertexSet) -> Vec<usize> {
    let rank = |u: usize| {
        if chosen.contains(u) {
            0
        } else if core.contains(u) {
            1
        } else {
            2
        }
    };
    let mut order = g.neighbors(v).to_vec();
    order.sort_by_key(|&u| (rank(u), u));
    order
}

/// Deterministic high-degree-core seed set for a connected undirected graph
/// with at least two vertices.
pub fn highdeg_seeder<R: Fraction>(g: &Graph, rho: R) -> Result<SeedSet<R>, GraphError> {
    if g.is_directed() {
        return Err(GraphError::Directed);
    }
    if g.n() < 2 {
        return Err(GraphError::TooSmall { required: 2, actual: g.n() });
    }
    if !g.is_connected()? {
        return Err(GraphError::Disconnected);
    }
    let mut core = high_degree_core(g, rho);
    if core.is_empty() {
        core.insert(0);
    }
    let mut seeds = VertexSet::empty(g.n());
    for v in core.iter() {
        seeds.insert(v);
        let want = rho.min_active(g.degree(v));
        for u in seed_selection_order(g, v, &seeds, &core).into_iter().take(want) {
            seeds.insert(u);
        }
    }
    Ok(SeedSet {
        vertices: seeds,
        provenance: Provenance::HighDegreeCore { rho },
        budget: budget_highdeg(g, rho),
        expected_bound: None,
    })
}

/// The degree cutoff `(1 / (C rho)) ln(e / rho)`.
pub fn low_indegree_cutoff<R: Fraction>(rho: R, c: f64) -> f64 {
    let rho = rho.to_f64();
    (std::f64::consts::E / rho).ln() / (c * rho)
}

/// Number of vertices with in-degree below [`low_indegree_cutoff`].
pub fn count_low_indegree<R: Fraction>(g: &Graph, rho: R, c: f64) -> usize {
    let cutoff = low_indegree_cutoff(rho, c);
    (0..g.n()).filter(|&v| (g.in_degree(v) as f64) < cutoff).count()
}

/// `8 C rho |V| + sum_v (d_in(v) + 1) exp(-3 C rho d_in(v))`, the expected
/// size bound for [`random_repair_seeder`] when `8 C rho < 1`.
pub fn expected_repair_bound<R: Fraction>(g: &Graph, rho: R, c: f64) -> f64 {
    let r = rho.to_f64();
    let tail: f64 = (0..g.n())
        .map(|v| {
            let d = g.in_degree(v) as f64;
            (d + 1.0) * (-3.0 * c * r * d).exp()
        })
        .sum();
    8.0 * c * r * g.n() as f64 + tail
}

/// Randomized sample-and-repair seed set; activates every vertex by round 1.
///
/// The reported `budget` is the realized bound `|S0| + sum_{v in A} (d_in(v) + 1)`,
/// which always dominates the returned size, and `expected_bound` carries
/// [`expected_repair_bound`]. If `8 C rho >= 1` every vertex is returned.
pub fn random_repair_seeder<R: Fraction>(g: &Graph, rho: R, c: f64, seed: RngSeed) -> SeedSet<R> {
    let n = g.n();
    let q = 8.0 * c * rho.to_f64();
    let provenance = Provenance::RandomRepair { rho, c, seed };
    if q >= 1.0 {
        return SeedSet { vertices: VertexSet::full(n), provenance, budget: n, expected_bound: Some(n as f64) };
    }
    let mut rng = seed.rng();
    let mut sampled = VertexSet::empty(n);
    for v in 0..n {
        if rng.random_bool(q) {
            sampled.insert(v);
        }
    }
    let mut repair = VertexSet::empty(n);
    let mut budget = sampled.len();
    for v in 0..n {
        let d = g.in_degree(v);
        let hits = g.in_neighbors(v).iter().filter(|&&u| sampled.contains(u)).count();
        // non-strict: |N_in(v) ∩ S0| <= rho d_in(v)
        if rho.cmp_scaled(hits, d) != std::cmp::Ordering::Greater {
            repair.insert(v);
            budget += d + 1;
        }
    }
    let mut seeds = g.in_neighborhood(&repair);
    seeds.union_with(&repair);
    seeds.union_with(&sampled);
    SeedSet { vertices: seeds, provenance, budget, expected_bound: Some(expected_repair_bound(g, rho, c)) }
}
