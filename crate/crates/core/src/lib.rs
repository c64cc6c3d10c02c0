//! Reversible threshold cascades on graphs.
//!
//! In a reversible cascade a vertex is active in round `i + 1` iff at least a
//! `rho` fraction of its in-neighbors were active in round `i`; vertices with
//! no in-neighbors keep their state. This crate provides the graph model and
//! generators, the synchronous, asynchronous and irreversible dynamics, two
//! constructive seed-set procedures with their size budgets, and an exhaustive
//! `min-seed^(k)` oracle for small graphs.
//!
//! Cascade code is generic over the activation fraction ([`Fraction`]); the
//! aliases below fix the exact rational type used throughout the tools.

pub mod cascade;
pub mod edgelist;
pub mod error;
pub mod fraction;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod rng;
pub mod seeders;
pub mod vertex_set;

pub use cascade::{
    check_seed_stability, default_max_rounds, irreversible_step, is_monotone, run_async, run_cascade, run_irreversible,
    run_sync, sync_step, CascadeMode, CascadeTrace, Scheduler, SchedulerPolicy, Termination, ThresholdConfig,
};
pub use edgelist::{parse_edge_list, write_edge_list};
pub use error::{EdgeListError, GenError, GraphError, InvalidThreshold, OracleError, ParseFractionError};
pub use fraction::{format_ratio, parse_ratio, Fraction};
pub use generators::{gen_circulant, gen_er, gen_powerlaw_connected, ErParams, PowerLawParams};
pub use graph::{Directedness, Graph};
pub use oracle::{min_seed_curve, min_seed_exact, OracleResult, ORACLE_MAX_VERTICES};
pub use rng::RngSeed;
pub use seeders::{
    budget_highdeg, count_low_indegree, highdeg_seeder, random_repair_seeder, seed_selection_order, Provenance, SeedSet,
};
pub use vertex_set::VertexSet;

/// Exact activation fraction `a/b`.
pub type Rho = num_rational::Ratio<u64>;

/// Real-valued activation fraction.
pub type RhoF64 = f64;

pub type Threshold = ThresholdConfig<Rho>;
pub type ThresholdF64 = ThresholdConfig<f64>;

pub type ExactSeedSet = SeedSet<Rho>;

/// Parses `a/b` into a [`Rho`].
pub fn parse_rho(text: &str) -> Result<Rho, ParseFractionError> {
    parse_ratio(text)
}
