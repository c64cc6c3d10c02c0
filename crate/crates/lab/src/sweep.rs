//! Parameter sweeps: every (generator, rho, trial) combination becomes one
//! [`ExperimentRecord`], in that nesting order.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use revcascade::rng::mix;
use revcascade::{
    check_seed_stability, default_max_rounds, format_ratio, gen_circulant, gen_er, gen_powerlaw_connected,
    highdeg_seeder, random_repair_seeder, run_sync, ErParams, Fraction, Graph, PowerLawParams, Rho, RngSeed,
};

use crate::error::LabError;
use crate::record::{ExperimentRecord, SEEDER_HIGHDEG, SEEDER_RANDOM_REPAIR};

/// Attempts allowed to the power-law generator per row.
pub const POWERLAW_RETRIES: usize = 20;

/// Edge probability of an ER generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErDensity {
    Fixed(f64),
    /// `p = mult * ln(e / rho) / (rho n)`, capped at 1.
    Multiplier(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorSpec {
    Er { n: usize, density: ErDensity },
    PowerLaw { n: usize, gamma: f64, c: f64 },
    Circulant { n: usize, d: usize },
}

impl GeneratorSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            GeneratorSpec::Er { .. } => "er",
            GeneratorSpec::PowerLaw { .. } => "powerlaw",
            GeneratorSpec::Circulant { .. } => "circulant",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            GeneratorSpec::Er { n, .. } | GeneratorSpec::PowerLaw { n, .. } | GeneratorSpec::Circulant { n, .. } => n,
        }
    }

    /// `key=value` pairs joined by `;`, as written to the `params` column.
    pub fn params(&self) -> String {
        match *self {
            GeneratorSpec::Er { n, density: ErDensity::Fixed(p) } => format!("n={n};p={p}"),
            GeneratorSpec::Er { n, density: ErDensity::Multiplier(m) } => format!("n={n};mult={m}"),
            GeneratorSpec::PowerLaw { n, gamma, c } => format!("n={n};gamma={gamma};c={c}"),
            GeneratorSpec::Circulant { n, d } => format!("n={n};d={d}"),
        }
    }

    /// The edge probability an ER spec resolves to at `rho`.
    pub fn er_probability(&self, rho: Option<Rho>) -> Result<f64, LabError> {
        match *self {
            GeneratorSpec::Er { density: ErDensity::Fixed(p), .. } => Ok(p),
            GeneratorSpec::Er { n, density: ErDensity::Multiplier(m) } => {
                let rho = rho.ok_or_else(|| LabError::Usage("`mult=` needs --rho".into()))?.to_f64();
                Ok((m * (std::f64::consts::E / rho).ln() / (rho * n as f64)).min(1.0))
            }
            _ => Err(LabError::Usage(format!("{} has no edge probability", self.tag()))),
        }
    }

    /// Generates the graph. `rho` is needed only by `mult=` ER specs.
    pub fn build(&self, rho: Option<Rho>, seed: RngSeed) -> Result<Graph, LabError> {
        match *self {
            GeneratorSpec::Er { n, .. } => {
                let p = self.er_probability(rho)?;
                let params = ErParams::new(n, p).map_err(|e| LabError::Usage(e.to_string()))?;
                Ok(gen_er(params, seed))
            }
            GeneratorSpec::PowerLaw { n, gamma, c } => {
                let params = PowerLawParams::new(n, gamma, c).map_err(|e| LabError::Usage(e.to_string()))?;
                gen_powerlaw_connected(params, seed, POWERLAW_RETRIES)
                    .map_err(|e| LabError::Generator(format!("{}: {e}", self.params())))
            }
            GeneratorSpec::Circulant { n, d } => gen_circulant(n, d).map_err(|e| LabError::Usage(e.to_string())),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tag(), self.params().replace(';', ","))
    }
}

/// Parses `er:n=1000,p=0.01`, `er:n=1000,mult=10`,
/// `powerlaw:n=10000,gamma=2.5,c=4` or `circulant:n=100,d=6`.
impl FromStr for GeneratorSpec {
    type Err = LabError;

    fn from_str(text: &str) -> Result<Self, LabError> {
        let bad = |msg: String| LabError::Usage(format!("generator `{text}`: {msg}"));
        let (kind, rest) = text.split_once(':').ok_or_else(|| bad("expected `kind:key=value,...`".into()))?;
        let mut fields = std::collections::BTreeMap::new();
        for pair in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = pair.split_once('=').ok_or_else(|| bad(format!("`{pair}` is not key=value")))?;
            if fields.insert(k.trim(), v.trim()).is_some() {
                return Err(bad(format!("duplicate key `{k}`")));
            }
        }
        let mut take = |key: &str| fields.remove(key);
        fn num<T: FromStr>(key: &str, v: Option<&str>, bad: &dyn Fn(String) -> LabError) -> Result<T, LabError> {
            let v = v.ok_or_else(|| bad(format!("missing `{key}`")))?;
            v.parse().map_err(|_| bad(format!("bad value `{v}` for `{key}`")))
        }
        let spec = match kind {
            "er" => {
                let n = num("n", take("n"), &bad)?;
                let density = match (take("p"), take("mult")) {
                    (Some(p), None) => ErDensity::Fixed(num("p", Some(p), &bad)?),
                    (None, Some(m)) => ErDensity::Multiplier(num("mult", Some(m), &bad)?),
                    _ => return Err(bad("give exactly one of `p` and `mult`".into())),
                };
                GeneratorSpec::Er { n, density }
            }
            "powerlaw" => GeneratorSpec::PowerLaw {
                n: num("n", take("n"), &bad)?,
                gamma: num("gamma", take("gamma"), &bad)?,
                c: num("c", take("c"), &bad)?,
            },
            "circulant" => GeneratorSpec::Circulant { n: num("n", take("n"), &bad)?, d: num("d", take("d"), &bad)? },
            other => return Err(bad(format!("unknown generator `{other}`"))),
        };
        if let Some(key) = fields.keys().next() {
            return Err(bad(format!("unknown key `{key}`")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), LabError> {
        let bad = |msg: String| Err(LabError::Usage(format!("generator `{self}`: {msg}")));
        match *self {
            GeneratorSpec::Er { density: ErDensity::Fixed(p), .. } if !(0.0..=1.0).contains(&p) => {
                bad(format!("p = {p} outside [0, 1]"))
            }
            GeneratorSpec::Er { density: ErDensity::Multiplier(m), .. } if !(m > 0.0 && m.is_finite()) => {
                bad(format!("mult = {m} must be positive"))
            }
            GeneratorSpec::PowerLaw { n, gamma, c } => match PowerLawParams::new(n, gamma, c) {
                Ok(_) => Ok(()),
                Err(e) => bad(e.to_string()),
            },
            GeneratorSpec::Circulant { n, d } if d == 0 || d % 2 == 1 || d >= n => {
                bad(format!("degree {d} must be even, positive and below n"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeederKind {
    HighDegree,
    RandomRepair { c: f64 },
}

impl SeederKind {
    pub fn tag(&self) -> &'static str {
        match self {
            SeederKind::HighDegree => SEEDER_HIGHDEG,
            SeederKind::RandomRepair { .. } => SEEDER_RANDOM_REPAIR,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub generators: Vec<GeneratorSpec>,
    pub rhos: Vec<Rho>,
    pub trials: usize,
    pub seeder: SeederKind,
    pub base_seed: u64,
}

/// One row of a sweep before it is run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowPlan {
    pub index: usize,
    pub generator: GeneratorSpec,
    pub rho: Rho,
    pub trial: usize,
    /// `mix(base_seed, index)`; the graph uses stream 0, the seeder stream 1.
    pub seed: u64,
}

impl RowPlan {
    pub fn graph(&self) -> Result<Graph, LabError> {
        self.generator.build(Some(self.rho), RngSeed::new(self.seed, 0))
    }

    pub fn seeder_stream(&self) -> RngSeed {
        RngSeed::new(self.seed, 1)
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), LabError> {
        if self.generators.is_empty() || self.rhos.is_empty() {
            return Err(LabError::Usage("empty sweep grid".into()));
        }
        if self.trials == 0 {
            return Err(LabError::Usage("trials must be at least 1".into()));
        }
        if let SeederKind::RandomRepair { c } = self.seeder {
            if !(c > 1.0 && c.is_finite()) {
                return Err(LabError::Usage(format!("random-repair constant C = {c} must exceed 1")));
            }
        }
        self.generators.iter().try_for_each(GeneratorSpec::validate)
    }

    pub fn rows(&self) -> Vec<RowPlan> {
        let mut rows = Vec::with_capacity(self.generators.len() * self.rhos.len() * self.trials);
        for &generator in &self.generators {
            for &rho in &self.rhos {
                for trial in 0..self.trials {
                    let index = rows.len();
                    rows.push(RowPlan { index, generator, rho, trial, seed: mix(self.base_seed, index as u64) });
                }
            }
        }
        rows
    }
}

/// `rho^(gamma-1) n` for power-law graphs, `rho n` otherwise.
pub fn theory_scale(generator: &GeneratorSpec, rho: Rho) -> f64 {
    let r = rho.to_f64();
    match *generator {
        GeneratorSpec::PowerLaw { n, gamma, .. } => r.powf(gamma - 1.0) * n as f64,
        _ => r * generator.n() as f64,
    }
}

/// Total degree of the vertices with `d > 1/rho`.
pub fn high_degree_mass(g: &Graph, rho: Rho) -> usize {
    (0..g.n()).map(|v| g.degree(v)).filter(|&d| rho.exceeds_reciprocal(d)).sum()
}

/// Upper bound on [`high_degree_mass`] for a graph with at most `c n / k^gamma`
/// vertices of each degree `k`: the sum over `k > 1/rho` of `k c n / k^gamma`
/// is dominated by `c n` times the integral of `x^(1-gamma)` from
/// `1/rho - 1` to infinity, which is `c n (1/rho - 1)^(2-gamma) / (gamma - 2)`.
pub fn high_degree_mass_bound(n: usize, gamma: f64, c: f64, rho: Rho) -> f64 {
    let lower = 1.0 / rho.to_f64() - 1.0;
    if lower <= 0.0 {
        return f64::INFINITY;
    }
    c * n as f64 * lower.powf(2.0 - gamma) / (gamma - 2.0)
}

/// Runs one row and checks every guarantee of its seeder.
pub fn run_row(row: &RowPlan, seeder: SeederKind) -> Result<ExperimentRecord, LabError> {
    let g = row.graph()?;
    let n = g.n();
    let rho = row.rho;
    let seeds = match seeder {
        SeederKind::HighDegree => highdeg_seeder(&g, rho)
            .map_err(|e| LabError::Generator(format!("row {} ({}): {e}", row.index, row.generator)))?,
        SeederKind::RandomRepair { c } => random_repair_seeder(&g, rho, c, row.seeder_stream()),
    };
    let trace = run_sync(&g, &seeds.vertices, rho, default_max_rounds(n));
    let record = ExperimentRecord {
        trial: row.trial,
        generator: row.generator.tag().to_string(),
        params: row.generator.params(),
        rho: format_ratio(&rho),
        seeder: seeder.tag().to_string(),
        seed_count: seeds.len(),
        budget: seeds.budget,
        theory_scale: theory_scale(&row.generator, rho),
        rounds_to_full: trace.rounds_to_full(),
        monotone: trace.monotone,
        rng_seed: row.seed,
    };
    let violation = |reason: String| LabError::Violation { reason, record: Box::new(record.clone()) };
    record.check_invariants().map_err(violation)?;
    if seeder == SeederKind::HighDegree {
        if !check_seed_stability(&g, &seeds.vertices, rho) {
            return Err(violation("highdeg seeds are not stable".into()));
        }
        let diameter = g
            .diameter()
            .expect("highdeg accepted the graph, so it is undirected")
            .expect("highdeg accepted the graph, so it is connected");
        if record.rounds_to_full.is_some_and(|r| r > diameter) {
            return Err(violation(format!("all-active only after the diameter {diameter}")));
        }
    }
    if let GeneratorSpec::PowerLaw { gamma, c, .. } = row.generator {
        let mass = high_degree_mass(&g, rho);
        let bound = high_degree_mass_bound(n, gamma, c, rho);
        if mass as f64 > bound {
            return Err(violation(format!("high-degree mass {mass} exceeds the tail bound {bound}")));
        }
    }
    Ok(record)
}

/// Runs every row, in parallel, and returns the records in row order. The
/// first guarantee violation (in row order among the rows that ran) aborts
/// the sweep.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<ExperimentRecord>, LabError> {
    spec.validate()?;
    let failed = AtomicBool::new(false);
    let results: Vec<Result<Option<ExperimentRecord>, LabError>> = spec
        .rows()
        .par_iter()
        .map(|row| {
            if failed.load(Ordering::Relaxed) {
                return Ok(None);
            }
            let result = run_row(row, spec.seeder);
            if result.is_err() {
                failed.store(true, Ordering::Relaxed);
            }
            result.map(Some)
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut skipped = false;
    for result in results {
        match result? {
            Some(record) => records.push(record),
            None => skipped = true,
        }
    }
    debug_assert!(!skipped, "rows are skipped only after a failure");
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_specs_parse() {
        assert_eq!(
            "er:n=5,p=1".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::Er { n: 5, density: ErDensity::Fixed(1.0) }
        );
        assert_eq!(
            "powerlaw:n=100,gamma=2.5,c=4".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::PowerLaw { n: 100, gamma: 2.5, c: 4.0 }
        );
        assert_eq!("circulant:d=4,n=10".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Circulant { n: 10, d: 4 });
        for bad in [
            "er:n=5",
            "er:n=5,p=0.1,mult=2",
            "er:n=5,p=2",
            "powerlaw:n=100,gamma=2,c=4",
            "circulant:n=10,d=3",
            "ring:n=4",
            "er:n=5,p=0.5,q=1",
            "er",
        ] {
            assert!(matches!(bad.parse::<GeneratorSpec>(), Err(LabError::Usage(_))), "{bad}");
        }
        let spec: GeneratorSpec = "er:n=1000,mult=10".parse().unwrap();
        assert_eq!(spec.to_string().parse::<GeneratorSpec>().unwrap(), spec);
    }

    #[test]
    fn multiplier_density() {
        let spec: GeneratorSpec = "er:n=1000,mult=10".parse().unwrap();
        let p = spec.er_probability(Some(Rho::new(1, 10))).unwrap();
        let expected = 10.0 * (10.0 * std::f64::consts::E).ln() / 100.0;
        assert!((p - expected).abs() < 1e-15);
        assert_eq!(spec.er_probability(Some(Rho::new(1, 1000))).unwrap(), 1.0);
        assert!(spec.er_probability(None).is_err());
    }

    #[test]
    fn rows_nest_generator_rho_trial() {
        let spec = SweepSpec {
            generators: vec!["circulant:n=10,d=4".parse().unwrap(), "circulant:n=12,d=4".parse().unwrap()],
            rhos: vec![Rho::new(1, 2), Rho::new(1, 3)],
            trials: 3,
            seeder: SeederKind::HighDegree,
            base_seed: 9,
        };
        let rows = spec.rows();
        assert_eq!(rows.len(), 12);
        assert_eq!((rows[4].generator.n(), rows[4].rho, rows[4].trial), (10, Rho::new(1, 3), 1));
        assert_eq!(rows[7].generator.n(), 12);
        assert!(rows.iter().enumerate().all(|(i, r)| r.index == i && r.seed == mix(9, i as u64)));
    }

    #[test]
    fn empty_grids_are_usage_errors() {
        let mut spec = SweepSpec {
            generators: vec![],
            rhos: vec![Rho::new(1, 2)],
            trials: 1,
            seeder: SeederKind::HighDegree,
            base_seed: 0,
        };
        assert!(matches!(run_sweep(&spec), Err(LabError::Usage(_))));
        spec.generators.push("circulant:n=10,d=4".parse().unwrap());
        spec.trials = 0;
        assert!(matches!(run_sweep(&spec), Err(LabError::Usage(_))));
        spec.trials = 1;
        spec.seeder = SeederKind::RandomRepair { c: 1.0 };
        assert!(matches!(run_sweep(&spec), Err(LabError::Usage(_))));
    }

    #[test]
    fn theory_scales() {
        let pl = GeneratorSpec::PowerLaw { n: 10_000, gamma: 2.5, c: 4.0 };
        assert!((theory_scale(&pl, Rho::new(1, 16)) - 10_000.0 / 64.0).abs() < 1e-9);
        let er = GeneratorSpec::Er { n: 2000, density: ErDensity::Fixed(0.1) };
        assert_eq!(theory_scale(&er, Rho::new(1, 20)), 100.0);
    }

    #[test]
    fn mass_bound_on_a_star() {
        // star K_{1,8}: one vertex of degree 8 and eight of degree 1
        let g = Graph::undirected(9, (1..9).map(|v| (0, v))).unwrap();
        assert_eq!(high_degree_mass(&g, Rho::new(1, 2)), 8);
        assert_eq!(high_degree_mass(&g, Rho::new(1, 8)), 0);
        let c = g.empirical_tail_constant(2.5f64).unwrap();
        assert!(8.0 <= high_degree_mass_bound(9, 2.5, c, Rho::new(1, 2)));
        assert_eq!(high_degree_mass_bound(9, 2.5, c, Rho::new(1, 1)), f64::INFINITY);
    }

    #[test]
    fn highdeg_rows_on_circulants() {
        let spec = SweepSpec {
            generators: vec!["circulant:n=40,d=6".parse().unwrap()],
            rhos: vec![Rho::new(1, 10), Rho::new(1, 2), Rho::new(1, 1)],
            trials: 2,
            seeder: SeederKind::HighDegree,
            base_seed: 1,
        };
        let records = run_sweep(&spec).unwrap();
        assert_eq!(records.len(), 6);
        assert!(records.iter().all(|r| r.seed_count <= r.budget && r.monotone));
        assert_eq!(records[0].rho, "1/10");
        assert_eq!(records[0].params, "n=40;d=6");
    }

    #[test]
    fn disconnected_graphs_are_rejected_for_highdeg() {
        let spec = SweepSpec {
            generators: vec!["er:n=50,p=0".parse().unwrap()],
            rhos: vec![Rho::new(1, 2)],
            trials: 1,
            seeder: SeederKind::HighDegree,
            base_seed: 1,
        };
        assert!(matches!(run_sweep(&spec), Err(LabError::Generator(_))));
    }
}
