//! Maximum-likelihood fit over `(μ, ln σ, ln κ)`.

use serde::{Deserialize, Serialize};

use crate::distributions::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::numerics::simplex::{minimize_simplex_with, SimplexOptions};

/// Smallest shape used as a starting point, since ln κ must be finite.
const MIN_START_KAPPA: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleFit {
    pub params: FamilyParams,
    pub avg_loglik: f64,
    pub iterations: usize,
    pub converged: bool,
    pub warnings: Vec<String>,
}

/// Mean log-density, `-inf` if any sample lies outside the support.
pub(crate) fn mean_ln_pdf(samples: &[f64], p: &FamilyParams) -> f64 {
    samples.iter().map(|&x| p.ln_pdf(x)).sum::<f64>() / samples.len() as f64
}

/// Maximize the average log-likelihood starting from `start`.
pub fn mle_fit(samples: &[f64], family: Family, start: &FamilyParams) -> Result<MleFit> {
    if samples.is_empty() {
        return Err(Error::Input("no samples".into()));
    }
    if let Some(x) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::Input(format!("non-finite sample {x}")));
    }
    let s0 = start.sigma;
    let mut mu0 = start.mu;
    if family == Family::GparetoOneSided {
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        if mu0 > min {
            mu0 = min;
        }
    }
    let x0 = [mu0 / s0, s0.ln(), start.kappa.max(MIN_START_KAPPA).ln()];
    // location is optimized in units of the starting scale
    let objective = |v: &[f64]| {
        match FamilyParams::new(family, v[0] * s0, v[1].exp(), v[2].exp()) {
            Ok(p) => -mean_ln_pdf(samples, &p),
            Err(_) => f64::INFINITY,
        }
    };
    let opts = SimplexOptions {
        tol: 1e-12,
        max_iterations: 20_000,
        steps: Some(vec![0.05, 0.05, 0.2]),
        restarts: 3,
    };
    let r = minimize_simplex_with(objective, &x0, &opts);
    let params = FamilyParams::new(family, r.point[0] * s0, r.point[1].exp(), r.point[2].exp())?;
    let mut warnings = Vec::new();
    if !r.converged {
        warnings.push(format!("optimizer stopped after {} iterations without converging", r.iterations));
    }
    Ok(MleFit {
        params,
        avg_loglik: -r.value,
        iterations: r.iterations,
        converged: r.converged,
        warnings,
    })
}
