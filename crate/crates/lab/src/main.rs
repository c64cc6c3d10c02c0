use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use revcascade::{parse_rho, CascadeMode, Rho, RngSeed, Scheduler, SchedulerPolicy, ThresholdConfig, VertexSet};
use revcascade_lab::commands;
use revcascade_lab::{GeneratorSpec, LabError, SeederKind, SweepSpec};

#[derive(Parser)]
#[command(name = "cascade-lab", version, about = "Reversible threshold cascade experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeederArg {
    Highdeg,
    RandomRepair,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Generate {
        /// `er:n=..,p=..`, `er:n=..,mult=..`, `powerlaw:n=..,gamma=..,c=..` or `circulant:n=..,d=..`
        generator: GeneratorSpec,
        /// Needed by `mult=` ER specs.
        #[arg(long, value_parser = rho_arg)]
        rho: Option<Rho>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one cascade and summarize it.
    Cascade {
        graph: PathBuf,
        /// File holding a `seeds k: ...` line.
        #[arg(long, conflicts_with_all = ["vertices", "all"], required_unless_present_any = ["vertices", "all"])]
        seeds: Option<PathBuf>,
        /// Comma-separated seed vertices.
        #[arg(long, conflicts_with = "all")]
        vertices: Option<String>,
        /// Seed every vertex.
        #[arg(long)]
        all: bool,
        #[arg(long, value_parser = rho_arg)]
        rho: Rho,
        #[arg(long, default_value = "sync", value_parser = mode_arg)]
        mode: CascadeMode,
        #[arg(long, value_parser = scheduler_arg)]
        scheduler: Option<SchedulerPolicy>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Round or macro-step budget.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Print every state as `round r: <hex>`.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a seed set.
    Seed {
        graph: PathBuf,
        #[arg(long, value_parser = rho_arg)]
        rho: Rho,
        #[arg(long, value_enum, default_value = "highdeg")]
        seeder: SeederArg,
        /// Sampling constant of random-repair.
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a generator x rho x trial grid and write CSV.
    Sweep {
        /// Repeatable generator spec.
        #[arg(long = "gen", required = true)]
        generators: Vec<GeneratorSpec>,
        /// Comma-separated list of `a/b`.
        #[arg(long, value_parser = rho_arg, value_delimiter = ',', required = true)]
        rho: Vec<Rho>,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, value_enum, default_value = "highdeg")]
        seeder: SeederArg,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical constants from sweep CSV.
    Fit {
        csv: PathBuf,
        /// Flag groups whose max ratio exceeds this.
        #[arg(long)]
        ceiling: Option<f64>,
        /// Plot data path; defaults to the CSV path with a `.dat` extension.
        #[arg(long)]
        dat: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact min-seed curve of a small graph.
    Oracle {
        graph: PathBuf,
        #[arg(long, value_parser = rho_arg)]
        rho: Rho,
        /// Largest round budget; defaults to the diameter (or n if disconnected).
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long, default_value = "sync", value_parser = mode_arg)]
        mode: CascadeMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn rho_arg(s: &str) -> Result<Rho, String> {
    parse_rho(s).map_err(|e| e.to_string())
}

fn mode_arg(s: &str) -> Result<CascadeMode, String> {
    s.parse::<CascadeMode>().map_err(|e| e.to_string())
}

fn scheduler_arg(s: &str) -> Result<SchedulerPolicy, String> {
    s.parse::<SchedulerPolicy>().map_err(|e| e.to_string())
}

fn seeder_kind(arg: SeederArg, c: f64) -> SeederKind {
    match arg {
        SeederArg::Highdeg => SeederKind::HighDegree,
        SeederArg::RandomRepair => SeederKind::RandomRepair { c },
    }
}

fn read(path: &Path) -> Result<String, LabError> {
    std::fs::read_to_string(path).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), LabError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| LabError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), LabError> {
    match command {
        Command::Generate { generator, rho, seed, out } => {
            emit(&commands::generate(&generator, rho, seed)?, out.as_deref())
        }
        Command::Cascade { graph, seeds, vertices, all, rho, mode, scheduler, seed, max_steps, trace, out } => {
            let g = commands::parse_graph(&read(&graph)?)?;
            let seed_set = match (seeds, vertices) {
                (Some(path), _) => commands::parse_seed_file(&read(&path)?, g.n())?,
                (None, Some(list)) => commands::parse_vertex_list(&list, g.n())?,
                (None, None) if all => VertexSet::full(g.n()),
                (None, None) => return Err(LabError::Usage("no seeds given".into())),
            };
            let cfg = ThresholdConfig::new(rho, mode).map_err(|e| LabError::Usage(e.to_string()))?;
            if scheduler.is_some() && mode != CascadeMode::ReversibleAsync {
                return Err(LabError::Usage("--scheduler needs --mode async".into()));
            }
            let sched = scheduler.map(|p| Scheduler::new(p, RngSeed::new(seed, 0)));
            emit(&commands::cascade(&g, &seed_set, &cfg, sched, max_steps, trace), out.as_deref())
        }
        Command::Seed { graph, rho, seeder, c, seed, out } => {
            let g = commands::parse_graph(&read(&graph)?)?;
            emit(&commands::seed(&g, rho, seeder_kind(seeder, c), seed)?, out.as_deref())
        }
        Command::Sweep { generators, rho, trials, seeder, c, seed, out } => {
            let spec = SweepSpec { generators, rhos: rho, trials, seeder: seeder_kind(seeder, c), base_seed: seed };
            emit(&commands::sweep(&spec)?, out.as_deref())
        }
        Command::Fit { csv, ceiling, dat, out } => {
            let (report, plot) = commands::fit_csv(&read(&csv)?, ceiling)?;
            let dat = dat.unwrap_or_else(|| csv.with_extension("dat"));
            emit(&plot, Some(&dat))?;
            emit(&report.render(), out.as_deref())
        }
        Command::Oracle { graph, rho, k_max, mode, out } => {
            let g = commands::parse_graph(&read(&graph)?)?;
            let k_max = match k_max {
                Some(k) => k,
                None if g.is_directed() => g.n(),
                None => g.diameter().ok().flatten().unwrap_or(g.n()),
            };
            emit(&commands::oracle(&g, rho, k_max, mode)?, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cascade-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
