//! Student's t shape from the geometric mean of absolute deviations.
//!
//! For `X ~ t(μ, σ, κ)`, `E[ln|X-μ|] = ln σ - ln h(κ)` with
//! `h(κ) = 2√κ·exp(½·H_{1/(2κ)-1})` and `H` the harmonic number of real
//! argument. `h` falls from `√2·e^{γ/2}` at the Gaussian limit to zero as κ
//! grows, so matching the sample log-average gives a unique κ.

use crate::error::{Error, Result};
use crate::numerics::roots::{find_root_bracketed, RootBracket};
use crate::numerics::special::harmonic_real;

pub const SCAN_LO: f64 = 1e-4;
pub const SCAN_HI: f64 = 64.0;
const SCAN_POINTS: usize = 97;
const ROOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSolve {
    pub kappa: f64,
    /// Samples equal to the location that were left out of the log-average.
    pub dropped: usize,
    /// Sign changes of the residual on the scan grid; more than one is
    /// suspicious and reported as a warning by the pipelines.
    pub sign_changes: usize,
}

/// `ln h(κ)`.
pub fn log_gm_factor(kappa: f64) -> f64 {
    if kappa == 0.0 {
        return 0.5 * (std::f64::consts::LN_2 + crate::numerics::special::EULER_GAMMA);
    }
    let h = harmonic_real(0.5 / kappa - 1.0).unwrap_or(f64::NEG_INFINITY);
    std::f64::consts::LN_2 + 0.5 * kappa.ln() + 0.5 * h
}

/// Residual `ln h(κ) + mean ln(|x-μ|/σ)`, decreasing in κ.
pub fn gm_residual(kappa: f64, mean_log_ratio: f64) -> f64 {
    log_gm_factor(kappa) + mean_log_ratio
}

/// Solve for κ given the mean of `ln(|x-μ|/σ)`.
pub fn shape_from_log_mean(mean_log_ratio: f64) -> Result<ShapeSolve> {
    if !mean_log_ratio.is_finite() {
        return Err(Error::domain(format!("log-average must be finite, got {mean_log_ratio}")));
    }
    let g = |k: f64| gm_residual(k, mean_log_ratio);
    let step = (SCAN_HI / SCAN_LO).ln() / (SCAN_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| if i == SCAN_POINTS - 1 { SCAN_HI } else { SCAN_LO * (step * i as f64).exp() })
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&k| g(k)).collect();
    let changes: Vec<usize> = (1..SCAN_POINTS)
        .filter(|&i| (vals[i - 1] > 0.0) != (vals[i] > 0.0) || vals[i] == 0.0)
        .collect();
    let Some(&first) = changes.first() else {
        return Err(Error::NoSignChange {
            lo: SCAN_LO,
            hi: SCAN_HI,
            g_lo: vals[0],
            g_hi: vals[SCAN_POINTS - 1],
        });
    };
    let bracket = RootBracket {
        lo: grid[first - 1],
        hi: grid[first],
        f_lo: vals[first - 1],
        f_hi: vals[first],
    };
    let kappa = find_root_bracketed(g, bracket, ROOT_TOL)?;
    Ok(ShapeSolve {
        kappa,
        dropped: 0,
        sign_changes: changes.len(),
    })
}

/// Estimate κ from samples given location and scale estimates.
pub fn estimate_shape_geometric_mean(samples: &[f64], mu: f64, sigma: f64) -> Result<ShapeSolve> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::domain(format!("scale must be positive, got {sigma}")));
    }
    let (mean, used) = mean_log_abs_deviation(samples, mu);
    if used == 0 {
        return Err(Error::Degenerate("every sample equals the location".into()));
    }
    let mut solve = shape_from_log_mean(mean - sigma.ln())?;
    solve.dropped = samples.len() - used;
    Ok(solve)
}

/// Mean of `ln|x - μ|` over samples not equal to μ, and how many were used.
pub(crate) fn mean_log_abs_deviation(samples: &[f64], mu: f64) -> (f64, usize) {
    let mut sum = 0.0;
    let mut used = 0usize;
    for &x in samples {
        let d = (x - mu).abs();
        if d > 4.0 * f64::EPSILON * x.abs().max(mu.abs()) && d > 0.0 {
            sum += d.ln();
            used += 1;
        }
    }
    (sum / used.max(1) as f64, used)
}
