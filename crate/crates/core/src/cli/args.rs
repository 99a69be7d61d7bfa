use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::estimators::ShapeMethod;
use crate::ia_select::{DiagonalMode, OffsetMode, DEFAULT_EPSILON, DEFAULT_PERMUTATIONS};

#[derive(Debug, Parser)]
#[command(name = "indapprox", version, about = "Heavy-tailed distribution estimation from independent approximates")]
pub struct Cli {
    /// Worker threads for parallel sections; outputs do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Draw samples from a distribution.
    Sample(SampleArgs),
    /// Estimate location, scale and shape.
    Estimate(EstimateArgs),
    /// Select independent approximates and write their representatives.
    IaSelect(IaSelectArgs),
    /// Average log-likelihood, Cramér-von Mises and KS of a fit.
    FitEval(FitEvalArgs),
    /// Hill tail-index estimate.
    Hill(HillArgs),
    /// Monte Carlo bias and precision over a parameter grid.
    Benchmark(BenchmarkArgs),
    /// Centered trajectory sums of the standard map.
    Stdmap(StdmapArgs),
    /// Re-run a command from its manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeArg {
    /// Geometric mean of absolute deviations.
    Gm,
    /// Fourth-order power moment.
    Pm4,
}

impl From<ShapeArg> for ShapeMethod {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Gm => ShapeMethod::GeometricMean,
            ShapeArg::Pm4 => ShapeMethod::PowerMoment4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OffsetArg {
    Disjoint,
    Overlapping,
}

impl From<OffsetArg> for OffsetMode {
    fn from(o: OffsetArg) -> Self {
        match o {
            OffsetArg::Disjoint => OffsetMode::Disjoint,
            OffsetArg::Overlapping => OffsetMode::Overlapping,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    /// Members equal to each other.
    Equal,
    /// Members equal up to sign.
    Abs,
}

impl From<ModeArg> for DiagonalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Equal => DiagonalMode::EqualDiagonal,
            ModeArg::Abs => DiagonalMode::AbsDiagonals,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleArgs {
    #[arg(long, default_value = "student-t")]
    pub family: Family,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub sigma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EstimateArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value = "student-t")]
    pub family: Family,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_hyphen_values = true)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_PERMUTATIONS)]
    pub permutations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Student's t shape method.
    #[arg(long, value_enum, default_value_t = ShapeArg::Gm)]
    pub shape_method: ShapeArg,
    #[arg(long, value_enum, default_value_t = OffsetArg::Disjoint)]
    pub offsets: OffsetArg,
    #[arg(long)]
    pub json_out: PathBuf,
    /// Histogram and fitted density points as CSV.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct IaSelectArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Equal)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_hyphen_values = true)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_PERMUTATIONS)]
    pub permutations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OffsetArg::Disjoint)]
    pub offsets: OffsetArg,
    /// Representatives in the normalized domain, one per line.
    #[arg(long)]
    pub out: PathBuf,
    /// Counts and normalization constants.
    #[arg(long)]
    pub json_out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FitEvalArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// JSON written by `estimate`; individual flags override its values.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub json_out: PathBuf,
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct HillArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Single k; otherwise the stable average over [k-lo, k-hi].
    #[arg(long, conflicts_with_all = ["k_lo", "k_hi"])]
    pub k: Option<usize>,
    #[arg(long)]
    pub k_lo: Option<usize>,
    #[arg(long)]
    pub k_hi: Option<usize>,
    #[arg(long)]
    pub json_out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct BenchmarkArgs {
    /// Benchmark configuration JSON.
    #[arg(long)]
    pub config: PathBuf,
    /// Per-cell and pooled rows as CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Markdown summary; defaults to the CSV path with an `.md` extension.
    #[arg(long)]
    pub markdown_out: Option<PathBuf>,
}

impl BenchmarkArgs {
    pub fn markdown_path(&self) -> PathBuf {
        self.markdown_out.clone().unwrap_or_else(|| self.out.with_extension("md"))
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct StdmapArgs {
    /// Nonlinearity K.
    #[arg(long, allow_hyphen_values = true)]
    pub k: f64,
    /// Number of initial conditions.
    #[arg(long)]
    pub m: usize,
    /// Iterations per trajectory.
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub seed: u64,
    /// Keep x unbounded instead of reducing it to [0, 2π).
    #[arg(long)]
    pub no_wrap: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// Also fit a Student's t to the sums and write the report here.
    #[arg(long)]
    pub estimate_out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_hyphen_values = true)]
    pub epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_PERMUTATIONS)]
    pub permutations: usize,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Write outputs into this directory instead of their recorded paths.
    #[arg(long)]
    pub redirect: Option<PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sample(_) => "sample",
            Command::Estimate(_) => "estimate",
            Command::IaSelect(_) => "ia-select",
            Command::FitEval(_) => "fit-eval",
            Command::Hill(_) => "hill",
            Command::Benchmark(_) => "benchmark",
            Command::Stdmap(_) => "stdmap",
            Command::Replay(_) => "replay",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Sample(a) => Some(a.seed),
            Command::Estimate(a) => Some(a.seed),
            Command::IaSelect(a) => Some(a.seed),
            Command::Stdmap(a) => Some(a.seed),
            _ => None,
        }
    }

    pub fn inputs(&self) -> Vec<&Path> {
        match self {
            Command::Estimate(a) => vec![&a.input],
            Command::IaSelect(a) => vec![&a.input],
            Command::FitEval(a) => std::iter::once(a.input.as_path()).chain(a.params.as_deref()).collect(),
            Command::Hill(a) => vec![&a.input],
            Command::Benchmark(a) => vec![&a.config],
            Command::Replay(a) => vec![&a.manifest],
            Command::Sample(_) | Command::Stdmap(_) => vec![],
        }
    }

    /// Output paths, primary first.
    pub fn outputs(&self) -> Vec<PathBuf> {
        match self {
            Command::Sample(a) => vec![a.out.clone()],
            Command::Estimate(a) => std::iter::once(a.json_out.clone()).chain(a.plot_data.clone()).collect(),
            Command::IaSelect(a) => vec![a.out.clone(), a.json_out.clone()],
            Command::FitEval(a) => std::iter::once(a.json_out.clone()).chain(a.plot_data.clone()).collect(),
            Command::Hill(a) => vec![a.json_out.clone()],
            Command::Benchmark(a) => vec![a.out.clone(), a.markdown_path()],
            Command::Stdmap(a) => std::iter::once(a.out.clone()).chain(a.estimate_out.clone()).collect(),
            Command::Replay(_) => vec![],
        }
    }

    /// Move every output into `dir`, keeping file names.
    pub fn redirect_outputs(&mut self, dir: &Path) {
        let mv = |p: &mut PathBuf| {
            if let Some(name) = p.file_name() {
                *p = dir.join(name);
            }
        };
        match self {
            Command::Sample(a) => mv(&mut a.out),
            Command::Estimate(a) => {
                mv(&mut a.json_out);
                a.plot_data.as_mut().map(mv);
            }
            Command::IaSelect(a) => {
                mv(&mut a.out);
                mv(&mut a.json_out);
            }
            Command::FitEval(a) => {
                mv(&mut a.json_out);
                a.plot_data.as_mut().map(mv);
            }
            Command::Hill(a) => mv(&mut a.json_out),
            Command::Benchmark(a) => {
                let md = a.markdown_path();
                a.markdown_out = Some(md);
                mv(&mut a.out);
                a.markdown_out.as_mut().map(mv);
            }
            Command::Stdmap(a) => {
                mv(&mut a.out);
                a.estimate_out.as_mut().map(mv);
            }
            Command::Replay(_) => {}
        }
    }
}
