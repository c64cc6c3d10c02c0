//! Subcommand bodies. Each returns the text the CLI prints or writes.

use std::fmt::Write as _;

use revcascade::seeders::{format_seed_line, parse_seed_line};
use revcascade::{
    default_max_rounds, format_ratio, highdeg_seeder, min_seed_curve, parse_edge_list, random_repair_seeder,
    run_cascade, write_edge_list, CascadeMode, Graph, Rho, RngSeed, Scheduler, Threshold, VertexSet,
};

use crate::error::LabError;
use crate::fit::{fit, plot_data, FitReport};
use crate::record::{read_csv, write_csv};
use crate::sweep::{run_sweep, GeneratorSpec, SeederKind, SweepSpec};

/// Edge list of a generated graph. `rho` is needed by `mult=` ER specs only.
pub fn generate(spec: &GeneratorSpec, rho: Option<Rho>, seed: u64) -> Result<String, LabError> {
    spec.validate()?;
    Ok(write_edge_list(&spec.build(rho, RngSeed::new(seed, 0))?))
}

pub fn parse_graph(text: &str) -> Result<Graph, LabError> {
    parse_edge_list(text).map_err(|e| LabError::Input(format!("graph file {e}")))
}

/// Reads the first `seeds k: ...` line, skipping blank and `#` lines.
pub fn parse_seed_file(text: &str, n: usize) -> Result<VertexSet, LabError> {
    let (lineno, line) = text
        .lines()
        .enumerate()
        .find(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .ok_or_else(|| LabError::Input("seed file has no `seeds` line".into()))?;
    parse_seed_line(line, n).map_err(|e| LabError::Input(format!("seed file line {}: {e}", lineno + 1)))
}

/// Parses a comma-separated vertex list such as `0,3,5`.
pub fn parse_vertex_list(text: &str, n: usize) -> Result<VertexSet, LabError> {
    let mut set = VertexSet::empty(n);
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| LabError::Usage(format!("bad vertex `{tok}`")))?;
        if v >= n {
            return Err(LabError::Usage(format!("vertex {v} outside 0..{n}")));
        }
        set.insert(v);
    }
    Ok(set)
}

/// Default step budget: `4n + 16` rounds, or `10 n^2 + 16` asynchronous
/// macro-steps.
pub fn default_budget(n: usize, mode: CascadeMode) -> usize {
    match mode {
        CascadeMode::ReversibleAsync => 10 * n * n + 16,
        _ => default_max_rounds(n),
    }
}

/// `rounds_to_full`, `monotone`, optionally the per-round states, and the
/// `termination:` line.
pub fn cascade(
    g: &Graph,
    seeds: &VertexSet,
    cfg: &Threshold,
    scheduler: Option<Scheduler>,
    budget: Option<usize>,
    with_trace: bool,
) -> String {
    let budget = budget.unwrap_or_else(|| default_budget(g.n(), cfg.mode()));
    let trace = run_cascade(g, seeds, cfg, scheduler, budget);
    let mut out = String::new();
    match trace.rounds_to_full() {
        Some(r) => writeln!(out, "rounds_to_full: {r}"),
        None => writeln!(out, "rounds_to_full: never"),
    }
    .unwrap();
    writeln!(out, "monotone: {}", trace.monotone).unwrap();
    if with_trace {
        out.push_str(&trace.dump());
    } else {
        writeln!(out, "termination: {}", trace.termination).unwrap();
    }
    out
}

/// A `#` comment with provenance and budget, then the `seeds` line.
pub fn seed(g: &Graph, rho: Rho, seeder: SeederKind, seed: u64) -> Result<String, LabError> {
    let mut out = String::new();
    let set = match seeder {
        SeederKind::HighDegree => highdeg_seeder(g, rho).map_err(|e| LabError::Input(e.to_string()))?,
        SeederKind::RandomRepair { c } => {
            if !(c > 1.0 && c.is_finite()) {
                return Err(LabError::Usage(format!("random-repair constant C = {c} must exceed 1")));
            }
            random_repair_seeder(g, rho, c, RngSeed::new(seed, 1))
        }
    };
    write!(out, "# seeder {} rho {} budget {}", seeder.tag(), format_ratio(&rho), set.budget).unwrap();
    if let Some(expected) = set.expected_bound {
        write!(out, " expected {expected:.3}").unwrap();
    }
    if let SeederKind::RandomRepair { c } = seeder {
        write!(out, " c {c} seed {seed}").unwrap();
    }
    out.push('\n');
    out.push_str(&format_seed_line(&set.vertices));
    out.push('\n');
    Ok(out)
}

pub fn sweep(spec: &SweepSpec) -> Result<String, LabError> {
    write_csv(&run_sweep(spec)?)
}

/// The printed report and the plot data.
pub fn fit_csv(csv_text: &str, ceiling: Option<f64>) -> Result<(FitReport, String), LabError> {
    let records = read_csv(csv_text)?;
    if records.is_empty() {
        return Err(LabError::Input("CSV has no rows".into()));
    }
    Ok((fit(&records, ceiling), plot_data(&records)?))
}

/// One line per `k` in `0..=k_max`: the minimum, subsets explored, witness.
pub fn oracle(g: &Graph, rho: Rho, k_max: usize, mode: CascadeMode) -> Result<String, LabError> {
    let curve = min_seed_curve(g, rho, k_max, mode).map_err(|e| LabError::Usage(e.to_string()))?;
    let mut out = String::new();
    for r in curve {
        writeln!(
            out,
            "k {} minimum {} explored {} witness {}",
            r.k,
            r.minimum,
            r.explored,
            format_seed_line(&r.witness)
        )
        .unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use revcascade::{SchedulerPolicy, ThresholdConfig};

    fn blinker() -> Graph {
        Graph::undirected(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn blinker_summaries() {
        let g = blinker();
        let seeds = VertexSet::from_vertices(2, [0]);
        let sync = ThresholdConfig::new(Rho::new(1, 1), CascadeMode::ReversibleSync).unwrap();
        assert_eq!(
            cascade(&g, &seeds, &sync, None, None, false),
            "rounds_to_full: never\nmonotone: false\ntermination: cycle period 2 entry 0\n"
        );
        let irr = ThresholdConfig::new(Rho::new(1, 1), CascadeMode::Irreversible).unwrap();
        assert_eq!(
            cascade(&g, &seeds, &irr, None, None, true),
            "rounds_to_full: 1\nmonotone: true\nround 0: 1\nround 1: 3\ntermination: all_active round 1\n"
        );
        let all = VertexSet::full(2);
        assert!(cascade(&g, &all, &sync, None, None, false).ends_with("termination: all_active round 0\n"));
        let asy = ThresholdConfig::new(Rho::new(1, 1), CascadeMode::ReversibleAsync).unwrap();
        let sched = Scheduler::new(SchedulerPolicy::FullSweep, RngSeed::new(0, 0));
        assert!(cascade(&g, &seeds, &asy, Some(sched), Some(10), false).contains("budget_exhausted"));
    }

    #[test]
    fn generate_complete_er() {
        let text = generate(&"er:n=5,p=1".parse().unwrap(), None, 3).unwrap();
        assert!(text.starts_with("5 10 undirected\n"));
        let k2 = generate(&"powerlaw:n=2,gamma=3,c=8".parse().unwrap(), None, 3).unwrap();
        assert_eq!(k2, "2 1 undirected\n0 1\n");
    }

    #[test]
    fn seed_output_feeds_cascade() {
        let star = Graph::undirected(9, (1..9).map(|v| (0, v))).unwrap();
        let text = seed(&star, Rho::new(1, 2), SeederKind::HighDegree, 0).unwrap();
        assert_eq!(text, "# seeder highdeg rho 1/2 budget 7\nseeds 5: 0 1 2 3 4\n");
        assert_eq!(parse_seed_file(&text, 9).unwrap(), VertexSet::from_vertices(9, 0..5));
        assert!(matches!(parse_seed_file("# nothing\n", 9), Err(LabError::Input(_))));
        assert!(matches!(parse_seed_file("\nseeds 1: 12\n", 9), Err(LabError::Input(m)) if m.contains("line 2")));
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertex_list("0, 2,", 3).unwrap(), VertexSet::from_vertices(3, [0, 2]));
        assert!(parse_vertex_list("3", 3).is_err());
        assert!(parse_vertex_list("x", 3).is_err());
    }

    #[test]
    fn oracle_lines() {
        let text = oracle(&blinker(), Rho::new(1, 1), 2, CascadeMode::ReversibleSync).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.contains("minimum 2")));
        assert!(lines[0].starts_with("k 0 minimum 2 explored 4 witness seeds 2: 0 1"));
        let big = Graph::undirected(25, (1..25).map(|v| (0, v))).unwrap();
        assert!(matches!(oracle(&big, Rho::new(1, 2), 1, CascadeMode::Irreversible), Err(LabError::Usage(_))));
    }
}
