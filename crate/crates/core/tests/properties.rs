//! Cross-module properties on random corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revcascade::{
    check_seed_stability, count_low_indegree, default_max_rounds, gen_circulant, gen_er, gen_powerlaw_connected,
    highdeg_seeder, min_seed_exact, random_repair_seeder, run_async, run_sync, CascadeMode, ErParams, Graph,
    PowerLawParams, Rho, RngSeed, Scheduler, SchedulerPolicy, VertexSet,
};

/// Connected random graph: a random spanning tree plus extra random edges.
fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::undirected(n, edges).unwrap()
}

const RHOS: [(u64, u64); 4] = [(1, 10), (1, 4), (1, 2), (1, 1)];

#[test]
fn highdeg_seeds_satisfy_their_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..120 {
        let n = rng.random_range(2..120);
        let extra = rng.random_range(0..3 * n);
        let g = random_connected(&mut rng, n, extra);
        let diameter = g.diameter().unwrap().unwrap();
        for (a, b) in RHOS {
            let rho = Rho::new(a, b);
            let s = highdeg_seeder(&g, rho).unwrap();
            for u in s.vertices.iter() {
                let seeded = g.neighbors(u).iter().filter(|&&w| s.vertices.contains(w)).count();
                assert!(seeded >= revcascade::Fraction::min_active(&rho, g.degree(u)));
            }
            assert!(s.len() <= s.budget);
            assert!(check_seed_stability(&g, &s.vertices, rho));
            let t = run_sync(&g, &s.vertices, rho, default_max_rounds(n));
            assert!(t.monotone);
            assert!(t.rounds_to_full().is_some_and(|r| r <= diameter));
            // N^i[S] is active from round i on
            for (i, state) in t.states.iter().enumerate() {
                assert!(g.ball(&s.vertices, i).unwrap().is_subset(state));
            }
        }
    }
}

/// Stable seed sets that reach all-active synchronously do so under every
/// progressive schedule, without deactivations.
#[test]
fn stable_seeds_are_monotone_async_monopolies() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut graphs = 0;
    while graphs < 150 {
        let n = rng.random_range(2..40);
        let extra = rng.random_range(0..2 * n);
        let g = random_connected(&mut rng, n, extra);
        graphs += 1;
        let rho = Rho::new(1, rng.random_range(1..6));
        for _ in 0..20 {
            let seeds = VertexSet::from_vertices(n, (0..n).filter(|_| rng.random_bool(0.4)));
            if !check_seed_stability(&g, &seeds, rho) {
                continue;
            }
            if run_sync(&g, &seeds, rho, default_max_rounds(n)).rounds_to_full().is_none() {
                continue;
            }
            for policy in SchedulerPolicy::ALL {
                let sched = Scheduler::new(policy, RngSeed::new(rng.random(), 0));
                let t = run_async(&g, &seeds, rho, sched, 10 * n * n + 10);
                assert!(t.rounds_to_full().is_some(), "{policy} failed on n={n}");
                assert!(t.monotone);
            }
            checked += 1;
        }
    }
    assert!(checked >= 100, "only {checked} stable monopolies sampled");
}

#[test]
fn random_repair_activates_everything_in_one_round() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..200u64 {
        let n = rng.random_range(1..150);
        let directed = rng.random_bool(0.5);
        let m = rng.random_range(0..4 * n);
        let pairs: Vec<_> =
            (0..m).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).filter(|(u, v)| u != v).collect();
        let g = if directed { Graph::directed(n, pairs) } else { Graph::undirected(n, pairs) }.unwrap();
        let rho = Rho::new(1, rng.random_range(1..80));
        let c = 1.0 + rng.random::<f64>() * 3.0;
        let s = random_repair_seeder(&g, rho, c, RngSeed::new(trial, 5));
        assert!(s.len() <= s.budget);
        let t = run_sync(&g, &s.vertices, rho, 4);
        assert!(t.rounds_to_full().is_some_and(|r| r <= 1), "trial {trial}");
    }
}

#[test]
fn random_repair_on_dense_regular_graphs_stays_near_the_sample() {
    let (n, c) = (1000usize, 2.0f64);
    let rho = Rho::new(1, 50);
    let cutoff = (std::f64::consts::E * 50.0).ln() * 50.0 / c;
    let d = (cutoff.ceil() as usize + 1) & !1;
    let g = gen_circulant(n, d).unwrap();
    assert_eq!(count_low_indegree(&g, rho, c), 0);
    let scale = 8.0 * c * (1.0 / 50.0) * n as f64;
    for trial in 0..50 {
        let s = random_repair_seeder(&g, rho, c, RngSeed::new(31, trial));
        assert!((s.len() as f64) <= 10.0 * scale);
        assert!(run_sync(&g, &s.vertices, rho, 2).rounds_to_full().is_some_and(|r| r <= 1));
    }
}

#[test]
fn oracle_bounds_on_small_connected_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.random_range(2..=12);
        let extra = rng.random_range(0..2 * n);
        let g = random_connected(&mut rng, n, extra);
        let diameter = g.diameter().unwrap().unwrap();
        let rho = [Rho::new(1, 3), Rho::new(1, 2), Rho::new(1, 1)][rng.random_range(0..3)];
        let rev = min_seed_exact(&g, rho, diameter, CascadeMode::ReversibleSync).unwrap();
        let irr = min_seed_exact(&g, rho, diameter, CascadeMode::Irreversible).unwrap();
        assert!(rev.minimum <= highdeg_seeder(&g, rho).unwrap().len());
        assert!(irr.minimum <= rev.minimum);
        let next = min_seed_exact(&g, rho, diameter + 1, CascadeMode::ReversibleSync).unwrap();
        assert!(next.minimum <= rev.minimum);
        let t = run_sync(&g, &rev.witness, rho, diameter + 1);
        assert!(t.rounds_to_full().is_some_and(|r| r <= diameter));
    }
}

#[test]
fn er_generator_hits_requested_density() {
    let g = gen_er(ErParams::new(2000, 0.004).unwrap(), RngSeed::new(8, 8));
    let expected: f64 = 0.004 * 2000.0 * 1999.0 / 2.0;
    let sd = (expected * 0.996).sqrt();
    assert!((g.edge_count() as f64 - expected).abs() < 5.0 * sd);
}

#[test]
fn large_powerlaw_graph_is_certified_by_direct_scan() {
    let params = PowerLawParams::new(10_000, 2.5, 4.0).unwrap();
    let g = gen_powerlaw_connected(params, RngSeed::new(1, 1), 10).unwrap();
    assert!(g.is_connected().unwrap());
    let hist = g.degree_histogram().unwrap();
    let max_degree = *hist.keys().last().unwrap();
    assert!(max_degree <= g.n());
    for (&k, &count) in &hist {
        assert!(k >= 1);
        assert!(count as f64 / 1e4 <= 4.0 / (k as f64).powf(2.5), "degree {k} count {count}");
    }
}
