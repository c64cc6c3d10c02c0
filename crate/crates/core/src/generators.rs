//! Graph generators: Erdős–Rényi `G(n, p)`, connected graphs with a certified
//! power-law degree tail, and circulants.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::GenError;
use crate::graph::{component_labels, tail_constant_of_histogram, Graph};
use crate::rng::RngSeed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErParams {
    pub n: usize,
    pub p: f64,
}

impl ErParams {
    pub fn new(n: usize, p: f64) -> Result<Self, GenError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(GenError::InvalidParams(format!("edge probability {p} outside [0, 1]")));
        }
        Ok(Self { n, p })
    }
}

/// Target of [`gen_powerlaw_connected`]: at most a `c / k^gamma` fraction of
/// vertices of each degree `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawParams {
    pub n: usize,
    pub gamma: f64,
    pub c: f64,
}

impl PowerLawParams {
    pub fn new(n: usize, gamma: f64, c: f64) -> Result<Self, GenError> {
        if gamma.is_nan() || gamma <= 2.0 {
            return Err(GenError::InvalidParams(format!("tail exponent {gamma} must exceed 2")));
        }
        if c.is_nan() || c < 1.0 {
            return Err(GenError::InvalidParams(format!("tail constant {c} must be at least 1")));
        }
        if n < 2 {
            return Err(GenError::InvalidParams(format!("need at least 2 vertices, got {n}")));
        }
        Ok(Self { n, gamma, c })
    }
}

/// `G(n, p)`: every unordered pair independently with probability `p`.
///
/// Pairs are visited in the order `(0,1), (0,2), (1,2), (0,3), ...` and the gap
/// to the next included pair is drawn from a geometric distribution, so the
/// cost is proportional to the number of edges produced.
pub fn gen_er(params: ErParams, seed: RngSeed) -> Graph {
    let ErParams { n, p } = params;
    let total = (n as u64) * (n.saturating_sub(1) as u64) / 2;
    let mut edges = Vec::new();
    if p >= 1.0 {
        edges.extend((0..n).flat_map(|v| (0..v).map(move |u| (u, v))));
    } else if p > 0.0 && total > 0 {
        let mut rng = seed.rng();
        let log_q = (1.0 - p).ln();
        // column v holds pairs (0..v, v); `idx` is the global pair index
        let mut v = 1usize;
        let mut col_start = 0u64;
        let mut idx = 0u64;
        loop {
            let u01: f64 = 1.0 - rng.random::<f64>();
            let skip = (u01.ln() / log_q).floor();
            if !skip.is_finite() || skip >= (total - idx) as f64 {
                break;
            }
            idx += skip as u64;
            while idx >= col_start + v as u64 {
                col_start += v as u64;
                v += 1;
            }
            edges.push(((idx - col_start) as usize, v));
            idx += 1;
            if idx >= total {
                break;
            }
        }
    }
    Graph::undirected(n, edges).expect("generated pairs are simple and in range")
}

/// `n` vertices, `v` adjacent to `v ± 1, ..., v ± d/2 (mod n)`.
pub fn gen_circulant(n: usize, d: usize) -> Result<Graph, GenError> {
    if d % 2 == 1 || d == 0 {
        return Err(GenError::InvalidParams(format!("circulant degree {d} must be even and positive")));
    }
    if d >= n {
        return Err(GenError::InvalidParams(format!("circulant degree {d} must be below n = {n}")));
    }
    let edges = (0..n).flat_map(|v| (1..=d / 2).map(move |j| (v, (v + j) % n)));
    Ok(Graph::undirected(n, edges).expect("circulant pairs are simple"))
}

/// Target degree sequence: `floor((c/2) n / k^gamma)` vertices of each degree
/// `k >= 2` (up to `n - 1`), every other vertex degree 1, and one degree-1
/// vertex bumped to 2 if the degree sum is odd. Sorted descending.
pub fn powerlaw_degree_sequence(params: &PowerLawParams) -> Vec<usize> {
    let PowerLawParams { n, gamma, c } = *params;
    let slack = c / 2.0;
    let mut degrees = Vec::with_capacity(n);
    for k in 2..n {
        let count = (slack * n as f64 / (k as f64).powf(gamma)).floor() as usize;
        if count == 0 {
            break;
        }
        let room = n - degrees.len();
        degrees.extend(std::iter::repeat_n(k, count.min(room)));
    }
    degrees.resize(n, 1);
    if degrees.iter().sum::<usize>() % 2 == 1 {
        match degrees.iter().rposition(|&d| d == 1) {
            Some(i) => degrees[i] = 2,
            // no degree-1 vertex: drop one stub from the smallest degree instead
            None => *degrees.last_mut().unwrap() -= 1,
        }
    }
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    degrees
}

fn histogram(degrees: &[usize]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for &d in degrees {
        *hist.entry(d).or_insert(0) += 1;
    }
    hist
}

#[inline]
fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Configuration-model pairing followed by double-edge swaps that remove
/// self-loops and multi-edges. `None` if the swaps do not converge.
fn simple_configuration(degrees: &[usize], rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    let m = edges.len();
    if m == 0 {
        return Some(edges);
    }

    let mut multiplicity: std::collections::HashMap<(usize, usize), usize> = Default::default();
    for &(u, v) in &edges {
        *multiplicity.entry(key(u, v)).or_insert(0) += 1;
    }
    let is_bad = |e: (usize, usize), mult: &std::collections::HashMap<(usize, usize), usize>| {
        e.0 == e.1 || mult[&key(e.0, e.1)] > 1
    };
    let mut bad: Vec<usize> = (0..m).filter(|&i| is_bad(edges[i], &multiplicity)).collect();
    let max_attempts = 200 * (bad.len() + 1) + 10 * m;
    let mut attempts = 0;
    while let Some(&i) = bad.last() {
        if !is_bad(edges[i], &multiplicity) {
            bad.pop();
            continue;
        }
        attempts += 1;
        if attempts > max_attempts {
            return None;
        }
        let j = rng.random_range(0..m);
        if j == i {
            continue;
        }
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        let (x, y) = if rng.random_bool(0.5) { ((a, c), (b, d)) } else { ((a, d), (b, c)) };
        let fresh = |e: (usize, usize)| e.0 != e.1 && !multiplicity.contains_key(&key(e.0, e.1));
        if !fresh(x) || !fresh(y) || key(x.0, x.1) == key(y.0, y.1) {
            continue;
        }
        for old in [edges[i], edges[j]] {
            let k = key(old.0, old.1);
            let slot = multiplicity.get_mut(&k).unwrap();
            *slot -= 1;
            if *slot == 0 {
                multiplicity.remove(&k);
            }
        }
        *multiplicity.entry(key(x.0, x.1)).or_insert(0) += 1;
        *multiplicity.entry(key(y.0, y.1)).or_insert(0) += 1;
        edges[i] = x;
        edges[j] = y;
        if is_bad(edges[j], &multiplicity) {
            bad.push(j);
        }
    }
    Some(edges)
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Merges components by degree-preserving swaps `(a,b),(c,d) -> (a,c),(b,d)`
/// with the two edges taken from different components. A swap is kept only if
/// it lowers the component count. `false` if the retry budget runs out.
fn connect_by_swaps(n: usize, edges: &mut [(usize, usize)], rng: &mut ChaCha8Rng, max_tries: usize) -> bool {
    let mut tries = 0;
    loop {
        let adj = adjacency(n, edges);
        let labels = component_labels(n, |v| &adj[v]);
        let count = labels.iter().max().map_or(0, |&l| l + 1);
        if count <= 1 {
            return true;
        }
        let mut sizes = vec![0usize; count];
        for &l in &labels {
            sizes[l] += 1;
        }
        let giant = (0..count).max_by_key(|&l| (sizes[l], usize::MAX - l)).unwrap();
        let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, &(u, _)) in edges.iter().enumerate() {
            by_comp[labels[u]].push(i);
        }
        let other = (0..count).find(|&l| l != giant && !by_comp[l].is_empty());
        let Some(other) = other else {
            // an edgeless component cannot be merged without changing degrees
            return false;
        };
        let mut merged = false;
        while !merged {
            tries += 1;
            if tries > max_tries {
                return false;
            }
            let i = *by_comp[giant].choose(rng).unwrap();
            let j = *by_comp[other].choose(rng).unwrap();
            let ((a, b), (c, d)) = (edges[i], edges[j]);
            let (x, y) = if rng.random_bool(0.5) { ((a, c), (b, d)) } else { ((a, d), (b, c)) };
            edges[i] = x;
            edges[j] = y;
            let adj = adjacency(n, edges);
            let new_count = component_labels(n, |v| &adj[v]).iter().max().map_or(0, |&l| l + 1);
            if new_count < count {
                merged = true;
            } else {
                edges[i] = (a, b);
                edges[j] = (c, d);
            }
        }
    }
}

use rand::seq::IndexedRandom;

/// A connected simple undirected graph whose degree histogram satisfies
/// `count_k / n <= c / k^gamma` for every `k >= 1`.
///
/// The degree sequence comes from [`powerlaw_degree_sequence`]; each attempt
/// pairs stubs at random, repairs loops and multi-edges, and then joins
/// components by degree-preserving swaps. Degrees are never altered after the
/// sequence is fixed, so a connected outcome is certified by construction; the
/// certificate is rechecked on the final graph anyway.
pub fn gen_powerlaw_connected(params: PowerLawParams, seed: RngSeed, max_retries: usize) -> Result<Graph, GenError> {
    let params = PowerLawParams::new(params.n, params.gamma, params.c)?;
    let n = params.n;
    let degrees = powerlaw_degree_sequence(&params);
    let sequence_constant = tail_constant_of_histogram(&histogram(&degrees), n, params.gamma);
    let fail = |attempts, reason: &str| GenError::Uncertified {
        attempts,
        best_tail_constant: sequence_constant,
        reason: reason.to_string(),
    };
    if sequence_constant > params.c {
        return Err(fail(0, "degree sequence violates the tail bound"));
    }
    let stubs: usize = degrees.iter().sum();
    if stubs < 2 * (n - 1) {
        return Err(fail(0, "too few edges for a connected graph"));
    }
    let mut reason = "no attempts made";
    for attempt in 0..max_retries.max(1) {
        let mut rng = seed.child(attempt as u64).rng();
        let Some(mut edges) = simple_configuration(&degrees, &mut rng) else {
            reason = "could not remove loops and multi-edges";
            continue;
        };
        if !connect_by_swaps(n, &mut edges, &mut rng, 64 * n + 1000) {
            reason = "could not connect components";
            continue;
        }
        debug_assert_eq!(edges.iter().map(|&(u, v)| key(u, v)).collect::<HashSet<_>>().len(), edges.len());
        let g = Graph::undirected(n, edges).expect("repaired pairing is simple");
        let constant = g.empirical_tail_constant(params.gamma).expect("undirected");
        if g.is_connected().expect("undirected") && constant <= params.c {
            return Ok(g);
        }
        reason = "final certification failed";
    }
    Err(fail(max_retries.max(1), reason))
}
