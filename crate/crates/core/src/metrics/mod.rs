//! Fit-quality metrics and the Monte Carlo benchmark harness.

pub mod benchmark;
pub mod fit;

pub use benchmark::{run_benchmark, run_trials, BenchmarkConfig, BenchmarkTable, CellSummary, TrialOutcome};
pub use fit::{avg_loglikelihood, cvm_statistic, cvm_upper_tail, ks_statistic};
