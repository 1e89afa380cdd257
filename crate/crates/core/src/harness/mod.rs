//! Experiment driver: configs, seeded batches written as CSV, drift
//! measurement and summary reports.

pub mod config;
pub mod drift;
pub mod report;
pub mod run;

pub use config::{default_plb_grid, ExperimentConfig, PlbChoice};
pub use drift::{drift_samples, measure_drift, DriftBin, DriftReport, DriftSample};
pub use report::{read_results, read_results_file, render_table, summarize, SummaryReport};
pub use run::{cmd_run, reference_size, select_plb, theoretical_bound, Reference, ResultRow, RunOutput};
