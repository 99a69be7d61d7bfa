use std::path::Path;

use serde_json::{json, Value};

use super::{usage, BenchmarkArgs, CliError, Command, EstimateArgs, FitEvalArgs, HillArgs, IaSelectArgs, SampleArgs, StdmapArgs};
use crate::distributions::{Family, FamilyParams, SampleSet};
use crate::estimators::{estimate_gpareto, estimate_student_t, hill_estimate, hill_stable_average, num, EstimateReport, IaOptions};
use crate::ia_select::{linear_quantile, select_ntuples, SelectionConfig};
use crate::io::{format_value, read_samples, write_samples, write_text};
use crate::metrics::{avg_loglikelihood, cvm_statistic, ks_statistic, run_benchmark, BenchmarkConfig};
use crate::power_moments::Sided;
use crate::standard_map::{generate_z, MapConfig};

const PLOT_BINS: usize = 100;

pub(super) fn dispatch(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Sample(a) => sample(a),
        Command::Estimate(a) => estimate(a),
        Command::IaSelect(a) => ia_select(a),
        Command::FitEval(a) => fit_eval(a),
        Command::Hill(a) => hill(a),
        Command::Benchmark(a) => benchmark(a),
        Command::Stdmap(a) => stdmap(a),
        Command::Replay(_) => unreachable!("replay is handled before dispatch"),
    }
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Numerical(e.to_string()))?;
    Ok(write_text(path, &(text + "\n"))?)
}

fn params(family: Family, mu: f64, sigma: f64, kappa: f64) -> Result<FamilyParams, CliError> {
    FamilyParams::new(family, mu, sigma, kappa).map_err(|e| usage(e.to_string()))
}

fn check_selection(epsilon: f64, permutations: usize) -> Result<(), CliError> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(usage(format!("--epsilon must be positive, got {epsilon}")));
    }
    if permutations == 0 {
        return Err(usage("--permutations must be at least 1"));
    }
    Ok(())
}

fn sample(a: &SampleArgs) -> Result<(), CliError> {
    let p = params(a.family, a.mu, a.sigma, a.kappa)?;
    Ok(write_samples(&a.out, &p.sample(a.n, a.seed))?)
}

fn fit(family: Family, x: &[f64], opts: &IaOptions) -> Result<EstimateReport, CliError> {
    Ok(match family {
        Family::StudentT => estimate_student_t(x, opts)?,
        Family::GparetoOneSided => estimate_gpareto(x, Sided::One, opts)?,
        Family::GparetoTwoSided => estimate_gpareto(x, Sided::Two, opts)?,
    })
}

fn warn_all(w: &[String]) {
    for s in w {
        eprintln!("warning: {s}");
    }
}

fn estimate(a: &EstimateArgs) -> Result<(), CliError> {
    check_selection(a.epsilon, a.permutations)?;
    let x = read_samples(&a.input)?;
    let opts = IaOptions {
        offsets: a.offsets.into(),
        shape_method: a.shape_method.into(),
        ..IaOptions::new(a.epsilon, a.permutations, a.seed)
    };
    let r = fit(a.family, &x, &opts)?;
    warn_all(&r.warnings);
    write_json(&a.json_out, &r.to_json())?;
    if let Some(p) = &a.plot_data {
        write_text(p, &plot_data(&x, &r.params))?;
    }
    Ok(())
}

fn ia_select(a: &IaSelectArgs) -> Result<(), CliError> {
    check_selection(a.epsilon, a.permutations)?;
    if !(2..=20).contains(&a.order) {
        return Err(usage(format!("--order must lie in 2..=20, got {}", a.order)));
    }
    let x = read_samples(&a.input)?;
    let cfg = SelectionConfig {
        order: a.order,
        epsilon: a.epsilon,
        permutations: a.permutations,
        mode: a.mode.into(),
        offsets: a.offsets.into(),
        seed: a.seed,
    };
    let sel = select_ntuples(&x, &cfg)?;
    if sel.is_empty() {
        sel.require_nonempty()?;
    }
    write_samples(&a.out, &sel.representatives())?;
    write_json(
        &a.json_out,
        &json!({
            "order": a.order,
            "count": sel.count(),
            "samples": x.len(),
            "epsilon": num(a.epsilon),
            "permutations": a.permutations,
            "center": num(sel.state.center),
            "spread": num(sel.state.spread),
        }),
    )
}

fn fit_params(a: &FitEvalArgs) -> Result<FamilyParams, CliError> {
    let (mut family, mut mu, mut sigma, mut kappa) = (None, None, None, None);
    if let Some(p) = &a.params {
        let text = std::fs::read_to_string(p).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
        family = v["family"].as_str().map(str::parse::<Family>).transpose()?;
        mu = v["mu"].as_f64();
        sigma = v["sigma"].as_f64();
        kappa = v["kappa"].as_f64();
    }
    let family = a.family.or(family).unwrap_or(Family::StudentT);
    let get = |flag: Option<f64>, file: Option<f64>, name: &str| {
        flag.or(file).ok_or_else(|| usage(format!("--{name} is required without --params")))
    };
    params(family, get(a.mu, mu, "mu")?, get(a.sigma, sigma, "sigma")?, get(a.kappa, kappa, "kappa")?)
}

fn fit_eval(a: &FitEvalArgs) -> Result<(), CliError> {
    let p = fit_params(a)?;
    let x = read_samples(&a.input)?;
    let (cvm, cvm_p) = cvm_statistic(&x, &p)?;
    write_json(
        &a.json_out,
        &json!({
            "family": p.family.to_string(),
            "mu": num(p.mu),
            "sigma": num(p.sigma),
            "kappa": num(p.kappa),
            "avg_ll": num(avg_loglikelihood(&x, &p)?),
            "cvm": num(cvm),
            "cvm_p": num(cvm_p),
            "ks": num(ks_statistic(&x, &p)?),
        }),
    )?;
    if let Some(path) = &a.plot_data {
        write_text(path, &plot_data(&x, &p))?;
    }
    Ok(())
}

/// Hill domain errors come from the sample (k too large, non-positive
/// threshold), so they are data errors here.
fn data_domain(e: crate::Error) -> CliError {
    match e {
        crate::Error::Domain(m) => CliError::Data(m),
        e => e.into(),
    }
}

fn hill(a: &HillArgs) -> Result<(), CliError> {
    let x = read_samples(&a.input)?;
    let n = x.len();
    let v = if let Some(k) = a.k {
        json!({ "kappa": num(hill_estimate(&x, k).map_err(data_domain)?), "k_used": [k, k], "rule": "single k" })
    } else {
        // default window: the top 1% to 20% of the sample
        let lo = a.k_lo.unwrap_or((n / 100).max(1));
        let hi = a.k_hi.unwrap_or((n / 5).max(lo));
        let h = hill_stable_average(&x, lo, hi).map_err(data_domain)?;
        json!({ "kappa": num(h.kappa), "k_used": [h.k_used.0, h.k_used.1], "rule": h.rule })
    };
    write_json(&a.json_out, &v)
}

fn benchmark(a: &BenchmarkArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&a.config).map_err(|e| CliError::Data(format!("{}: {e}", a.config.display())))?;
    let cfg = BenchmarkConfig::from_json(&text).map_err(|e| usage(e.to_string()))?;
    let t = run_benchmark(&cfg)?;
    write_text(&a.out, &t.to_csv())?;
    Ok(write_text(&a.markdown_path(), &t.to_markdown())?)
}

fn stdmap(a: &StdmapArgs) -> Result<(), CliError> {
    let cfg = MapConfig {
        k: a.k,
        m: a.m,
        t: a.t,
        seed: a.seed,
        wrap: !a.no_wrap,
    };
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    if a.estimate_out.is_some() {
        check_selection(a.epsilon, a.permutations)?;
    }
    let z = generate_z(&cfg)?;
    write_samples(&a.out, &z)?;
    if let Some(p) = &a.estimate_out {
        let r = estimate_student_t(&z, &IaOptions::new(a.epsilon, a.permutations, a.seed))?;
        warn_all(&r.warnings);
        write_json(p, &r.to_json())?;
    }
    Ok(())
}

/// Histogram density over the central 99% of the sample next to the fitted
/// pdf at the bin centers.
fn plot_data(x: &SampleSet, p: &FamilyParams) -> String {
    let mut s = x.values.clone();
    s.sort_unstable_by(f64::total_cmp);
    let lo = linear_quantile(&s, 0.005);
    let hi = linear_quantile(&s, 0.995);
    let mut out = String::from("x,histogram,pdf\n");
    if !(hi > lo) {
        return out;
    }
    let w = (hi - lo) / PLOT_BINS as f64;
    let mut counts = vec![0usize; PLOT_BINS];
    for &v in &s {
        if v >= lo && v <= hi {
            counts[(((v - lo) / w) as usize).min(PLOT_BINS - 1)] += 1;
        }
    }
    let n = s.len() as f64;
    for (i, c) in counts.iter().enumerate() {
        let xc = lo + (i as f64 + 0.5) * w;
        out.push_str(&format!("{},{},{}\n", format_value(xc), format_value(*c as f64 / (n * w)), format_value(p.pdf(xc))));
    }
    out
}
