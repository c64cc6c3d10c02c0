//! Experiment harness for reversible threshold cascades: graph generation,
//! cascade runs, seed construction, parameter sweeps with CSV output, and
//! fitting of the empirical seed-count constants.

pub mod commands;
pub mod error;
pub mod fit;
pub mod record;
pub mod sweep;

pub use error::LabError;
pub use fit::{fit, plot_data, FitGroup, FitReport};
pub use record::{read_csv, write_csv, ExperimentRecord, CSV_HEADER};
pub use sweep::{run_sweep, ErDensity, GeneratorSpec, RowPlan, SeederKind, SweepSpec};
