//! Seeded graph generators and the experiment runner that validates every run and writes
//! CSV and JSON metrics.

mod experiment;
mod generators;

pub use experiment::{run_algorithm, run_experiment, write_csv, Algorithm, ExperimentSpec, MetricsRow, Outcome, Outputs, RunRecord};
pub use generators::{cycle, girth6, gnp, grid, path, random_tree, star, Generator};
