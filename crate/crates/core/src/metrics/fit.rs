//! Goodness-of-fit metrics for a fitted distribution.

use crate::distributions::FamilyParams;
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_finite, QuadratureOptions};

/// Series terms below this are dropped.
const SERIES_CUTOFF: f64 = 1e-10;
const MAX_TERMS: usize = 100_000;

fn check(samples: &[f64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::Input("no samples".into()));
    }
    if let Some(x) = samples.iter().find(|x| x.is_nan()) {
        return Err(Error::Input(format!("invalid sample {x}")));
    }
    Ok(())
}

fn sorted_cdf(samples: &[f64], p: &FamilyParams) -> Vec<f64> {
    let mut f: Vec<f64> = samples.iter().map(|&x| p.cdf(x)).collect();
    f.sort_unstable_by(f64::total_cmp);
    f
}

/// Mean log-density of the samples under `p`.
pub fn avg_loglikelihood(samples: &[f64], p: &FamilyParams) -> Result<f64> {
    check(samples)?;
    Ok(crate::estimators::mle::mean_ln_pdf(samples, p))
}

/// Cramér-von Mises statistic `1/(12N) + Σ((2i-1)/(2N) - F(x_(i)))²` and its
/// asymptotic upper-tail probability.
pub fn cvm_statistic(samples: &[f64], p: &FamilyParams) -> Result<(f64, f64)> {
    check(samples)?;
    let f = sorted_cdf(samples, p);
    let n = f.len() as f64;
    let mut w = 1.0 / (12.0 * n);
    for (i, fi) in f.iter().enumerate() {
        let d = (2 * i + 1) as f64 / (2.0 * n) - fi;
        w += d * d;
    }
    Ok((w, cvm_upper_tail(w)?))
}

/// `P(W > w)` for the limiting distribution of the statistic, from Smirnov's
/// alternating series of integrals over `((2k-1)π, 2kπ)` in `t = √y`.
pub fn cvm_upper_tail(w: f64) -> Result<f64> {
    if w.is_nan() {
        return Err(Error::domain("statistic is NaN"));
    }
    if w <= 0.0 {
        return Ok(1.0);
    }
    if w == f64::INFINITY {
        return Ok(0.0);
    }
    let opts = QuadratureOptions {
        rel_tol: 1e-12,
        ..QuadratureOptions::default()
    };
    let mut total = 0.0;
    for k in 1..=MAX_TERMS {
        let a = (2 * k - 1) as f64 * std::f64::consts::PI;
        let b = a + std::f64::consts::PI;
        // -sin t equals sin of the distance to the nearer endpoint
        let term = integrate_finite(
            |t, dl, dr| 2.0 * (-0.5 * w * t * t).exp() / (t * dl.min(dr).sin()).sqrt(),
            a,
            b,
            opts,
        )?
        .value
            / std::f64::consts::PI;
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
        if term < SERIES_CUTOFF {
            break;
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Kolmogorov-Smirnov distance between the empirical CDF and `p`.
pub fn ks_statistic(samples: &[f64], p: &FamilyParams) -> Result<f64> {
    check(samples)?;
    Ok(ks_from_sorted_cdf(&sorted_cdf(samples, p)))
}

/// Same distance for CDF values already sorted ascending.
pub fn ks_from_sorted_cdf(f: &[f64]) -> f64 {
    let n = f.len() as f64;
    f.iter()
        .enumerate()
        .map(|(i, &fi)| ((i + 1) as f64 / n - fi).max(fi - i as f64 / n))
        .fold(0.0, f64::max)
}
