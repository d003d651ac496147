//! Experiment harness: seeded trial sweeps over enhancement strategies and
//! costs, normal-approximation confidence intervals, CSV output.

pub mod config;
pub mod format;
pub mod stats;
pub mod sweep;

pub use config::{GraphSource, SweepConfig};
pub use stats::{confidence_interval, confidence_interval_z, Interval, Z_95};
pub use sweep::{run_sweep, run_sweep_on, write_csvs, Metric, SweepResult, SweepRow, CSV_HEADER};
