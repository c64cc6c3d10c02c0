//! Exhaustive `min-seed^(k)` for small graphs.
//!
//! Subsets are enumerated by increasing cardinality and, within one
//! cardinality, in lexicographic order of their sorted member lists. The first
//! subset whose cascade has every vertex active at round `k` is returned, so
//! the witness is the lexicographically first minimum.

use crate::cascade::CascadeMode;
use crate::error::OracleError;
use crate::fraction::Fraction;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Largest vertex count the oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub minimum: usize,
    pub witness: VertexSet,
    pub k: usize,
    /// Number of subsets whose cascade was simulated.
    pub explored: u64,
}

/// Bitmask form of a graph and threshold.
struct MaskDynamics {
    full: u32,
    in_mask: Vec<u32>,
    need: Vec<u32>,
    irreversible: bool,
}

impl MaskDynamics {
    fn new<R: Fraction>(g: &Graph, rho: R, irreversible: bool) -> Self {
        let n = g.n();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let in_mask = (0..n).map(|v| g.in_neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u)).collect();
        let need = (0..n).map(|v| rho.min_active(g.in_degree(v)) as u32).collect();
        Self { full, in_mask, need, irreversible }
    }

    #[inline]
    fn step(&self, state: u32) -> u32 {
        let mut next = 0u32;
        for (v, (&mask, &need)) in self.in_mask.iter().zip(&self.need).enumerate() {
            let on = if mask == 0 { state >> v & 1 == 1 } else { (state & mask).count_ones() >= need };
            next |= u32::from(on) << v;
        }
        if self.irreversible {
            next |= state;
        }
        next
    }

    /// `Active^(k)(seeds) == V`.
    fn covers_by(&self, seeds: u32, k: usize) -> bool {
        let mut state = seeds;
        for _ in 0..k {
            if state == self.full {
                return true;
            }
            let next = self.step(state);
            if next == state {
                return false;
            }
            state = next;
        }
        state == self.full
    }
}

/// Next subset of the same cardinality in lexicographic member order, or
/// `None` after the last one. `members` is strictly increasing.
fn next_combination(members: &mut [usize], n: usize) -> bool {
    let k = members.len();
    for i in (0..k).rev() {
        if members[i] < n - k + i {
            members[i] += 1;
            for j in i + 1..k {
                members[j] = members[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn check_inputs(g: &Graph, mode: CascadeMode) -> Result<(), OracleError> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(OracleError::TooLarge { n: g.n(), cap: ORACLE_MAX_VERTICES });
    }
    if mode == CascadeMode::ReversibleAsync {
        return Err(OracleError::UnsupportedMode);
    }
    Ok(())
}

/// Minimum number of seeds activating all of `g` at round `k`.
pub fn min_seed_exact<R: Fraction>(
    g: &Graph,
    rho: R,
    k: usize,
    mode: CascadeMode,
) -> Result<OracleResult, OracleError> {
    check_inputs(g, mode)?;
    let n = g.n();
    let dynamics = MaskDynamics::new(g, rho, mode == CascadeMode::Irreversible);
    let mut explored = 0u64;
    for size in 0..=n {
        let mut members: Vec<usize> = (0..size).collect();
        loop {
            let mask = members.iter().fold(0u32, |m, &v| m | 1 << v);
            explored += 1;
            if dynamics.covers_by(mask, k) {
                return Ok(OracleResult { minimum: size, witness: VertexSet::from_vertices(n, members), k, explored });
            }
            if size == 0 || !next_combination(&mut members, n) {
                break;
            }
        }
    }
    unreachable!("seeding every vertex activates all of them at round 0")
}

/// `min_seed_exact` for every `k` in `0..=k_max`.
pub fn min_seed_curve<R: Fraction>(
    g: &Graph,
    rho: R,
    k_max: usize,
    mode: CascadeMode,
) -> Result<Vec<OracleResult>, OracleError> {
    (0..=k_max).map(|k| min_seed_exact(g, rho, k, mode)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::{run_irreversible, run_sync};
    use crate::Rho;
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        Graph::undirected(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    const SYNC: CascadeMode = CascadeMode::ReversibleSync;

    #[test]
    fn combinations_are_lexicographic() {
        let mut m = vec![0, 1];
        let mut seen = vec![m.clone()];
        while next_combination(&mut m, 4) {
            seen.push(m.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn k2_round_zero_needs_everything() {
        let r = min_seed_exact(&complete(2), Rho::new(1, 1), 0, SYNC).unwrap();
        assert_eq!(r.minimum, 2);
    }

    #[test]
    fn blinker_forces_both_endpoints() {
        let g = complete(2);
        for k in 0..6 {
            assert_eq!(min_seed_exact(&g, Rho::new(1, 1), k, SYNC).unwrap().minimum, 2);
        }
        // irreversibly one endpoint suffices from round 1 on
        assert_eq!(min_seed_exact(&g, Rho::new(1, 1), 1, CascadeMode::Irreversible).unwrap().minimum, 1);
    }

    #[test]
    fn triangle_half_threshold() {
        let r = min_seed_exact(&complete(3), Rho::new(1, 2), 1, SYNC).unwrap();
        assert_eq!(r.minimum, 2);
        assert_eq!(r.witness, VertexSet::from_vertices(3, [0, 1]));
    }

    #[test]
    fn star_k13_half_threshold_curve() {
        // Enumerated by hand over all 16 subsets: at round 1 every leaf needs the
        // center active at round 0, and the center needs 2 of its 3 leaves, so
        // {center, two leaves} is the smallest working seed set.
        let g = Graph::undirected(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let curve = min_seed_curve(&g, Rho::new(1, 2), 3, SYNC).unwrap();
        let minima: Vec<usize> = curve.iter().map(|r| r.minimum).collect();
        assert_eq!(minima[0], 4);
        assert_eq!(minima[1], 3);
        assert_eq!(curve[1].witness, VertexSet::from_vertices(4, [0, 1, 2]));
        assert!(minima.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn four_cycle_curve_is_non_increasing() {
        let g = Graph::undirected(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let minima: Vec<usize> =
            min_seed_curve(&g, Rho::new(1, 2), 5, SYNC).unwrap().iter().map(|r| r.minimum).collect();
        assert_eq!(minima[0], 4);
        assert!(minima.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn rejects_large_graphs_and_async() {
        let g = Graph::undirected(25, []).unwrap();
        assert_eq!(min_seed_exact(&g, Rho::new(1, 2), 1, SYNC), Err(OracleError::TooLarge { n: 25, cap: 24 }));
        assert_eq!(
            min_seed_exact(&complete(3), Rho::new(1, 2), 1, CascadeMode::ReversibleAsync),
            Err(OracleError::UnsupportedMode)
        );
    }

    /// Independent check: brute force over all subsets via the engine's runners.
    fn engine_minimum(g: &Graph, rho: Rho, k: usize, irreversible: bool) -> (usize, u64) {
        let n = g.n();
        let mut best: Option<(usize, u64)> = None;
        for mask in 0u64..(1 << n) {
            let seeds = VertexSet::from_mask(n, mask);
            let trace =
                if irreversible { run_irreversible(g, &seeds, rho) } else { run_sync(g, &seeds, rho, k.max(1) + 1) };
            if trace.rounds_to_full().is_some_and(|r| r <= k) {
                let size = mask.count_ones() as usize;
                if best.is_none_or(|(s, _)| size < s) {
                    best = Some((size, mask));
                }
            }
        }
        best.unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn oracle_matches_engine_brute_force(
            n in 1usize..=7,
            raw in proptest::collection::vec((0usize..7, 0usize..7), 0..14),
            k in 0usize..4,
            rho in prop::sample::select(vec![Rho::new(1, 3), Rho::new(1, 2), Rho::new(1, 1)]),
            irreversible in any::<bool>(),
        ) {
            let g = Graph::undirected(n, raw.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v)).unwrap();
            let mode = if irreversible { CascadeMode::Irreversible } else { SYNC };
            let r = min_seed_exact(&g, rho, k, mode).unwrap();
            let (size, _) = engine_minimum(&g, rho, k, irreversible);
            prop_assert_eq!(r.minimum, size);
            prop_assert_eq!(r.witness.len(), size);
            let again = min_seed_exact(&g, rho, k, mode).unwrap();
            prop_assert_eq!(again, r);
        }
    }
}
