//! Hill tail-index estimator and a stable-window average over k.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn sorted(samples: &[f64]) -> Result<Vec<f64>> {
    if let Some(x) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::Input(format!("non-finite sample {x}")));
    }
    let mut v = samples.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    Ok(v)
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::domain(format!("k must lie in [1, {}), got {k}", n)));
    }
    Ok(())
}

/// `(1/k)·Σ_{i<k} ln(X_(N-i) / X_(N-k))` over ascending order statistics.
pub fn hill_estimate(samples: &[f64], k: usize) -> Result<f64> {
    let v = sorted(samples)?;
    let n = v.len();
    check_k(k, n)?;
    let base = v[n - k - 1];
    if !(base > 0.0) {
        return Err(Error::domain(format!("threshold order statistic must be positive, got {base}")));
    }
    let s: f64 = v[n - k..].iter().map(|x| (x / base).ln()).sum();
    Ok(s / k as f64)
}

/// Hill estimates for every k in `k_lo..=k_hi`.
pub fn hill_path(samples: &[f64], k_lo: usize, k_hi: usize) -> Result<Vec<f64>> {
    let v = sorted(samples)?;
    let n = v.len();
    if k_lo > k_hi {
        return Err(Error::domain(format!("empty k range [{k_lo}, {k_hi}]")));
    }
    check_k(k_lo, n)?;
    check_k(k_hi, n)?;
    let base = v[n - k_hi - 1];
    if !(base > 0.0) {
        return Err(Error::domain(format!("threshold order statistic must be positive, got {base}")));
    }
    // running sum of the top log-values
    let logs: Vec<f64> = v[n - k_hi - 1..].iter().map(|x| x.ln()).collect();
    let top = logs.len() - 1;
    let mut sum = 0.0;
    let mut out = Vec::with_capacity(k_hi - k_lo + 1);
    for k in 1..=k_hi {
        sum += logs[top + 1 - k];
        if k >= k_lo {
            out.push(sum / k as f64 - logs[top - k]);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HillAverage {
    pub kappa: f64,
    /// First and last k of the averaged window.
    pub k_used: (usize, usize),
    /// Window rule, kept with the result for auditability.
    pub rule: String,
}

/// Average the Hill estimate over the most stable stretch of `k_lo..=k_hi`:
/// among contiguous windows spanning a quarter of the range (rounded up),
/// the one with the smallest variance.
pub fn hill_stable_average(samples: &[f64], k_lo: usize, k_hi: usize) -> Result<HillAverage> {
    let path = hill_path(samples, k_lo, k_hi)?;
    let len = path.len();
    let w = len.div_ceil(4).max(1);
    let mut s1 = vec![0.0; len + 1];
    let mut s2 = vec![0.0; len + 1];
    // center before squaring to keep the variance well conditioned
    let shift = path[0];
    for (i, &x) in path.iter().enumerate() {
        let d = x - shift;
        s1[i + 1] = s1[i] + d;
        s2[i + 1] = s2[i] + d * d;
    }
    let wf = w as f64;
    let mut best = (f64::INFINITY, 0usize);
    for start in 0..=len - w {
        let a = s1[start + w] - s1[start];
        let b = s2[start + w] - s2[start];
        let var = (b - a * a / wf) / wf;
        if var < best.0 {
            best = (var, start);
        }
    }
    let start = best.1;
    let kappa = path[start..start + w].iter().sum::<f64>() / wf;
    Ok(HillAverage {
        kappa,
        k_used: (k_lo + start, k_lo + start + w - 1),
        rule: format!("minimum-variance window of width {w} (ceil of 25% of {len})"),
    })
}
