//! Monte Carlo bias and precision harness over a grid of true parameters.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::estimators::{estimate_gpareto, estimate_student_t, EstimateReport, IaOptions};
use crate::ia_select::{DEFAULT_EPSILON, DEFAULT_PERMUTATIONS};
use crate::power_moments::Sided;
use crate::rng::derive_path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    pub family: Family,
    pub shapes: Vec<f64>,
    pub locations: Vec<f64>,
    pub scales: Vec<f64>,
    pub sizes: Vec<usize>,
    pub trials: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_permutations")]
    pub permutations: usize,
    pub seed: u64,
    /// Explicit (location, scale) pairs. When present they replace the
    /// product of `locations` and `scales`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<(f64, f64)>>,
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

fn default_permutations() -> usize {
    DEFAULT_PERMUTATIONS
}

impl BenchmarkConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: BenchmarkConfig =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("benchmark config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Input("trials must be at least 1".into()));
        }
        if self.shapes.is_empty() || self.sizes.is_empty() || self.location_scale_cells().is_empty() {
            return Err(Error::Input("parameter grids must be non-empty".into()));
        }
        for &(mu, sigma) in &self.location_scale_cells() {
            for &k in &self.shapes {
                FamilyParams::new(self.family, mu, sigma, k)?;
            }
        }
        Ok(())
    }

    pub fn location_scale_cells(&self) -> Vec<(f64, f64)> {
        match &self.cells {
            Some(c) => c.clone(),
            None => self
                .locations
                .iter()
                .flat_map(|&m| self.scales.iter().map(move |&s| (m, s)))
                .collect(),
        }
    }
}

/// Aggregate over one grid cell, or over all cells sharing a shape and size
/// when `mu` and `sigma` are `None`. Location and scale errors are in units
/// of the true scale. Precision is absent with fewer than two successes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub shape: f64,
    pub mu: Option<f64>,
    pub sigma: Option<f64>,
    pub size: usize,
    pub trials: usize,
    pub failures: usize,
    pub bias_mu: f64,
    pub bias_sigma: f64,
    pub bias_kappa: f64,
    pub precision_mu: Option<f64>,
    pub precision_sigma: Option<f64>,
    pub precision_kappa: Option<f64>,
    pub mean_n2: f64,
    pub std_n2: Option<f64>,
    pub mean_n3: f64,
    pub std_n3: Option<f64>,
    pub first_error: Option<String>,
}

impl CellSummary {
    pub fn all_failed(&self) -> bool {
        self.failures == self.trials
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkTable {
    pub cells: Vec<CellSummary>,
    pub pooled: Vec<CellSummary>,
}

/// Outcome of a single trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub truth: FamilyParams,
    pub size: usize,
    pub result: std::result::Result<EstimateReport, String>,
}

/// Seed of one trial; a function of grid position only.
pub fn trial_seed(base: u64, shape: usize, cell: usize, size: usize, trial: usize) -> u64 {
    derive_path(base, &[shape as u64, cell as u64, size as u64, trial as u64])
}

fn estimate(family: Family, x: &[f64], opts: &IaOptions) -> Result<EstimateReport> {
    match family {
        Family::StudentT => estimate_student_t(x, opts),
        Family::GparetoOneSided => estimate_gpareto(x, Sided::One, opts),
        Family::GparetoTwoSided => estimate_gpareto(x, Sided::Two, opts),
    }
}

/// Run every trial of the grid. Trials execute in parallel; the output is
/// ordered by (shape, cell, size, trial).
pub fn run_trials(cfg: &BenchmarkConfig) -> Result<Vec<TrialOutcome>> {
    cfg.validate()?;
    let cells = cfg.location_scale_cells();
    let mut jobs = Vec::new();
    for (si, &k) in cfg.shapes.iter().enumerate() {
        for (ci, &(mu, sigma)) in cells.iter().enumerate() {
            for (ni, &n) in cfg.sizes.iter().enumerate() {
                for t in 0..cfg.trials {
                    jobs.push((FamilyParams::new(cfg.family, mu, sigma, k)?, n, trial_seed(cfg.seed, si, ci, ni, t)));
                }
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(truth, n, seed)| {
            let x = truth.sample(n, seed);
            let opts = IaOptions::new(cfg.epsilon, cfg.permutations, crate::rng::derive_seed(seed, 1));
            TrialOutcome {
                truth,
                size: n,
                result: estimate(cfg.family, &x, &opts).map_err(|e| e.to_string()),
            }
        })
        .collect())
}

pub fn run_benchmark(cfg: &BenchmarkConfig) -> Result<BenchmarkTable> {
    let outcomes = run_trials(cfg)?;
    let ncells = cfg.location_scale_cells().len();
    let per = cfg.trials;
    let mut cells = Vec::new();
    let mut pooled = Vec::new();
    for si in 0..cfg.shapes.len() {
        for ni in 0..cfg.sizes.len() {
            let mut group = Vec::new();
            for ci in 0..ncells {
                let start = ((si * ncells + ci) * cfg.sizes.len() + ni) * per;
                let chunk = &outcomes[start..start + per];
                cells.push(summarize(chunk, true));
                group.extend_from_slice(chunk);
            }
            pooled.push(summarize(&group, false));
        }
    }
    Ok(BenchmarkTable { cells, pooled })
}

fn mean_std(v: &[f64]) -> (f64, Option<f64>) {
    if v.is_empty() {
        return (f64::NAN, None);
    }
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (m, None);
    }
    let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, Some(var.sqrt()))
}

/// Bias and precision over a set of trials. Pooled precision is the spread
/// of every individual estimate, so it describes one estimate rather than
/// the group mean.
fn summarize(trials: &[TrialOutcome], single_cell: bool) -> CellSummary {
    let truth = trials[0].truth;
    let mut e = [Vec::new(), Vec::new(), Vec::new()];
    let mut n2 = Vec::new();
    let mut n3 = Vec::new();
    let mut first_error = None;
    for t in trials {
        match &t.result {
            Ok(r) => {
                e[0].push((r.params.mu - t.truth.mu) / t.truth.sigma);
                e[1].push((r.params.sigma - t.truth.sigma) / t.truth.sigma);
                e[2].push(r.params.kappa - t.truth.kappa);
                n2.push(r.n2 as f64);
                n3.push(r.n3 as f64);
            }
            Err(msg) => {
                if first_error.is_none() {
                    first_error = Some(msg.clone());
                }
            }
        }
    }
    let (bm, pm) = mean_std(&e[0]);
    let (bs, ps) = mean_std(&e[1]);
    let (bk, pk) = mean_std(&e[2]);
    let (m2, s2) = mean_std(&n2);
    let (m3, s3) = mean_std(&n3);
    CellSummary {
        shape: truth.kappa,
        mu: single_cell.then_some(truth.mu),
        sigma: single_cell.then_some(truth.sigma),
        size: trials[0].size,
        trials: trials.len(),
        failures: trials.len() - e[0].len(),
        bias_mu: bm,
        bias_sigma: bs,
        bias_kappa: bk,
        precision_mu: pm,
        precision_sigma: ps,
        precision_kappa: pk,
        mean_n2: m2,
        std_n2: s2,
        mean_n3: m3,
        std_n3: s3,
        first_error,
    }
}

pub const CSV_HEADER: &str = "scope,shape,mu,sigma,size,trials,failures,bias_mu,precision_mu,bias_sigma,precision_sigma,bias_kappa,precision_kappa,mean_n2,std_n2,mean_n3,std_n3";

fn f(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(f).unwrap_or_default()
}

impl BenchmarkTable {
    /// One row per cell followed by the pooled rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for (scope, rows) in [("cell", &self.cells), ("pooled", &self.pooled)] {
            for r in rows {
                let _ = writeln!(
                    out,
                    "{scope},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    f(r.shape),
                    opt(r.mu),
                    opt(r.sigma),
                    r.size,
                    r.trials,
                    r.failures,
                    f(r.bias_mu),
                    opt(r.precision_mu),
                    f(r.bias_sigma),
                    opt(r.precision_sigma),
                    f(r.bias_kappa),
                    opt(r.precision_kappa),
                    f(r.mean_n2),
                    opt(r.std_n2),
                    f(r.mean_n3),
                    opt(r.std_n3),
                );
            }
        }
        out
    }

    /// Pooled rows as a Markdown table of `bias ± precision`.
    pub fn to_markdown(&self) -> String {
        let pm = |b: f64, p: Option<f64>| match p {
            Some(p) => format!("{b:.3} ± {p:.3}"),
            None => format!("{b:.3}"),
        };
        let mut out = String::from(
            "| Shape | N | Location | Scale | Shape | Pairs | Triplets | Failed |\n|---|---|---|---|---|---|---|---|\n",
        );
        for r in &self.pooled {
            let _ = writeln!(
                out,
                "| {:.2} | {} | {} | {} | {} | {} | {} | {}/{} |",
                r.shape,
                r.size,
                pm(r.bias_mu, r.precision_mu),
                pm(r.bias_sigma, r.precision_sigma),
                pm(r.bias_kappa, r.precision_kappa),
                pm(r.mean_n2, r.std_n2),
                pm(r.mean_n3, r.std_n3),
                r.failures,
                r.trials,
            );
        }
        let failed: Vec<&CellSummary> = self.cells.iter().filter(|c| c.all_failed()).collect();
        if !failed.is_empty() {
            out.push_str("\nCells where every trial failed:\n\n");
            for c in failed {
                let _ = writeln!(
                    out,
                    "- shape {} mu {} sigma {} N {}: {}",
                    c.shape,
                    c.mu.unwrap_or(f64::NAN),
                    c.sigma.unwrap_or(f64::NAN),
                    c.size,
                    c.first_error.as_deref().unwrap_or("")
                );
            }
        }
        out
    }
}
