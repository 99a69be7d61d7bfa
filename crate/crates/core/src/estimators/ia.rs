//! Estimation pipelines built on independent approximates.
//!
//! Everything runs in normalized units (median-centered, divided by the
//! spread) and is mapped back at the end, so the estimates move with shifts
//! and rescalings of the data.

use serde::{Deserialize, Serialize};

use super::shape::{mean_log_abs_deviation, shape_from_log_mean};
use super::{predict_bias_precision, EstimateReport};
use crate::distributions::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::ia_select::{
    select_normalized, DiagonalMode, IASelection, NormalizationState, OffsetMode, SelectionConfig, DEFAULT_EPSILON,
    DEFAULT_PERMUTATIONS,
};
use crate::power_moments::{invert_shape_pareto, invert_shape_student_alt, Sided};
use crate::rng::derive_seed;

const SMALL_SAMPLE: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeMethod {
    /// Solve the geometric-mean relation on all samples.
    GeometricMean,
    /// Second moment of sign-aligned 4-tuples: `κ = σ²/μ₂ - 4`.
    PowerMoment4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IaOptions {
    pub epsilon: f64,
    pub permutations: usize,
    pub seed: u64,
    pub offsets: OffsetMode,
    pub shape_method: ShapeMethod,
}

impl Default for IaOptions {
    fn default() -> Self {
        IaOptions {
            epsilon: DEFAULT_EPSILON,
            permutations: DEFAULT_PERMUTATIONS,
            seed: 0,
            offsets: OffsetMode::Disjoint,
            shape_method: ShapeMethod::GeometricMean,
        }
    }
}

impl IaOptions {
    pub fn new(epsilon: f64, permutations: usize, seed: u64) -> Self {
        IaOptions {
            epsilon,
            permutations,
            seed,
            ..Self::default()
        }
    }

    fn config(&self, order: usize, mode: DiagonalMode, stream: u64) -> SelectionConfig {
        SelectionConfig {
            order,
            epsilon: self.epsilon,
            permutations: self.permutations,
            mode,
            offsets: self.offsets,
            seed: derive_seed(self.seed, stream),
        }
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn mean_square(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64
}

/// Location as the mean of pair representatives.
pub fn estimate_location_ia(pairs: &IASelection) -> Result<f64> {
    if pairs.config.order != 2 || pairs.config.mode != DiagonalMode::EqualDiagonal {
        return Err(Error::domain("location needs pairs selected along the equal diagonal"));
    }
    pairs.require_nonempty()?;
    Ok(mean(&pairs.representatives()))
}

/// Student's t scale `σ = √(3·mean((v - μ)²))` from sign-aligned triplet
/// representatives `v`.
pub fn estimate_scale_student_ia(triplets: &IASelection, mu: f64) -> Result<f64> {
    if triplets.config.order != 3 || triplets.config.mode != DiagonalMode::AbsDiagonals {
        return Err(Error::domain("scale needs triplets selected along all sign diagonals"));
    }
    triplets.require_nonempty()?;
    let dev: Vec<f64> = triplets.representatives().iter().map(|v| v - mu).collect();
    Ok((3.0 * mean_square(&dev)).sqrt())
}

/// Fit a Student's t distribution.
pub fn estimate_student_t(samples: &[f64], opts: &IaOptions) -> Result<EstimateReport> {
    let mut warnings = Vec::new();
    if samples.len() < SMALL_SAMPLE {
        warnings.push(format!("small sample: {} values", samples.len()));
    }
    let state = NormalizationState::from_samples(samples)?;
    let z = state.apply(samples);

    let pairs = select_normalized(&z, state, &opts.config(2, DiagonalMode::EqualDiagonal, 0))?;
    pairs.require_nonempty()?;
    let mu_z = mean(&pairs.normalized);

    // sign alignment is about the estimated location
    let zc: Vec<f64> = z.iter().map(|v| v - mu_z).collect();
    let triplets = select_normalized(&zc, state, &opts.config(3, DiagonalMode::AbsDiagonals, 1))?;
    triplets.require_nonempty()?;
    let sigma_z = (3.0 * mean_square(&triplets.normalized)).sqrt();
    if !(sigma_z > 0.0) {
        return Err(Error::Degenerate("triplet representatives all equal the location".into()));
    }

    let kappa = match opts.shape_method {
        ShapeMethod::GeometricMean => {
            let (lm, used) = mean_log_abs_deviation(&zc, 0.0);
            if used == 0 {
                return Err(Error::Degenerate("every sample equals the location".into()));
            }
            if used < zc.len() {
                warnings.push(format!("{} samples at the location left out of the log-average", zc.len() - used));
            }
            match shape_from_log_mean(lm - sigma_z.ln()) {
                Ok(s) => {
                    if s.sign_changes > 1 {
                        warnings.push(format!("shape residual changes sign {} times; first root used", s.sign_changes));
                    }
                    s.kappa
                }
                Err(Error::NoSignChange { g_lo, .. }) if g_lo < 0.0 => {
                    warnings.push("log-average lighter than the Gaussian limit; shape clipped to 0".into());
                    0.0
                }
                Err(e) => return Err(e),
            }
        }
        ShapeMethod::PowerMoment4 => {
            let quads = select_normalized(&zc, state, &opts.config(4, DiagonalMode::AbsDiagonals, 2))?;
            quads.require_nonempty()?;
            let inv = invert_shape_student_alt(mean_square(&quads.normalized), sigma_z)?;
            if inv.clipped {
                warnings.push("negative shape from the 4-tuple moment clipped to 0".into());
            }
            inv.kappa
        }
    };

    let mu = state.denormalize(mu_z);
    let sigma = sigma_z * state.spread;
    let params = FamilyParams::student_t(mu, sigma, kappa)?;
    Ok(EstimateReport {
        params,
        n2: pairs.count(),
        n3: triplets.count(),
        epsilon: opts.epsilon,
        permutations: opts.permutations,
        theory: predict_bias_precision(kappa, sigma, pairs.count(), triplets.count()),
        warnings,
    })
}

/// Fit a one- or two-sided generalized Pareto distribution.
///
/// The two-sided location is the pair mean; the data are then folded onto
/// the upper side. The one-sided location is the sample minimum. On the
/// excess over the location, the scale is twice the pair mean and the shape
/// follows from the triplet second moment.
pub fn estimate_gpareto(samples: &[f64], sided: Sided, opts: &IaOptions) -> Result<EstimateReport> {
    let mut warnings = Vec::new();
    if samples.len() < SMALL_SAMPLE {
        warnings.push(format!("small sample: {} values", samples.len()));
    }
    let state = NormalizationState::from_samples(samples)?;
    let z = state.apply(samples);

    let (mu, excess, n_loc) = match sided {
        Sided::Two => {
            let pairs = select_normalized(&z, state, &opts.config(2, DiagonalMode::EqualDiagonal, 0))?;
            pairs.require_nonempty()?;
            let mu_z = mean(&pairs.normalized);
            let y: Vec<f64> = z.iter().map(|v| (v - mu_z).abs()).collect();
            (state.denormalize(mu_z), y, Some(pairs.count()))
        }
        Sided::One => {
            let min_z = z.iter().copied().fold(f64::INFINITY, f64::min);
            let mu = samples.iter().copied().fold(f64::INFINITY, f64::min);
            warnings.push("location taken as the sample minimum".into());
            (mu, z.iter().map(|v| v - min_z).collect(), None)
        }
    };

    // Searching the sign diagonals of the non-negative excess selects as if
    // from its mirror image, which avoids losing tuples at the boundary.
    let pairs = select_normalized(&excess, state, &opts.config(2, DiagonalMode::AbsDiagonals, 3))?;
    pairs.require_nonempty()?;
    let abs_reps: Vec<f64> = pairs.normalized.iter().map(|v| v.abs()).collect();
    let sigma_z = 2.0 * mean(&abs_reps);
    if !(sigma_z > 0.0) {
        return Err(Error::Degenerate("pair representatives all at the location".into()));
    }
    let triplets = select_normalized(&excess, state, &opts.config(3, DiagonalMode::AbsDiagonals, 4))?;
    triplets.require_nonempty()?;
    let m2 = mean_square(&triplets.normalized);
    if !(m2 > 0.0) {
        return Err(Error::Degenerate("triplet representatives all at the location".into()));
    }
    let inv = invert_shape_pareto(m2, sigma_z, sided)?;
    if inv.clipped {
        warnings.push("negative shape from the triplet moment clipped to 0".into());
    }

    let sigma = sigma_z * state.spread;
    let family = match sided {
        Sided::One => Family::GparetoOneSided,
        Sided::Two => Family::GparetoTwoSided,
    };
    let params = FamilyParams::new(family, mu, sigma, inv.kappa)?;
    let n2 = n_loc.unwrap_or(pairs.count());
    Ok(EstimateReport {
        params,
        n2,
        n3: triplets.count(),
        epsilon: opts.epsilon,
        permutations: opts.permutations,
        theory: predict_bias_precision(inv.kappa, sigma, n2, triplets.count()),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ia_select::{select_ntuples, SelectionConfig};

    #[test]
    fn location_and_scale_formulas() {
        let mk = |reps: Vec<f64>, cfg: SelectionConfig| IASelection {
            sources: vec![0; reps.len() * cfg.order],
            config: cfg,
            state: NormalizationState::identity(),
            normalized: reps,
        };
        let p = mk(vec![1.0, 2.0, 3.0], SelectionConfig::pairs(0.1, 1, 0));
        assert_eq!(estimate_location_ia(&p).unwrap(), 2.0);
        let p = mk(vec![4.5], SelectionConfig::pairs(0.1, 1, 0));
        assert_eq!(estimate_location_ia(&p).unwrap(), 4.5);
        let t = mk(vec![-1.0, 0.0, 1.0], SelectionConfig::triplets_abs(0.1, 1, 0));
        assert!((estimate_scale_student_ia(&t, 0.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let t = mk(vec![0.5, 0.5], SelectionConfig::triplets_abs(0.1, 1, 0));
        assert_eq!(estimate_scale_student_ia(&t, 0.5).unwrap(), 0.0);
        assert!(estimate_location_ia(&t).is_err());
        let e = mk(vec![], SelectionConfig::pairs(0.1, 1, 0));
        assert!(matches!(estimate_location_ia(&e), Err(Error::EmptySelection { .. })));
    }

    #[test]
    fn student_pipeline_recovers_parameters() {
        let p = FamilyParams::student_t(5.0, 2.0, 0.5).unwrap();
        let x = p.sample(20_000, 4).values;
        let r = estimate_student_t(&x, &IaOptions::new(0.1, 10, 1)).unwrap();
        assert!((r.params.mu - 5.0).abs() < 0.1, "{r:?}");
        assert!((r.params.sigma - 2.0).abs() < 0.2, "{r:?}");
        assert!((r.params.kappa - 0.5).abs() < 0.15, "{r:?}");
        assert!(r.n2 > 0 && r.n3 > 0);
        assert!(r.warnings.is_empty());
        // 4-tuples are rare at small tolerances and the inversion is steep
        let alt = IaOptions {
            shape_method: ShapeMethod::PowerMoment4,
            ..IaOptions::new(0.4, 10, 1)
        };
        let r = estimate_student_t(&x, &alt).unwrap();
        assert!((r.params.kappa - 0.5).abs() < 0.6, "{r:?}");
    }

    #[test]
    fn pipeline_matches_building_blocks() {
        let p = FamilyParams::student_t(0.0, 1.0, 1.0).unwrap();
        let x = p.sample(3000, 9).values;
        let opts = IaOptions::new(0.1, 5, 77);
        let r = estimate_student_t(&x, &opts).unwrap();
        let pairs = select_ntuples(&x, &opts.config(2, DiagonalMode::EqualDiagonal, 0)).unwrap();
        let mu = estimate_location_ia(&pairs).unwrap();
        assert!((mu - r.params.mu).abs() < 1e-12);
        assert_eq!(pairs.count(), r.n2);
    }

    #[test]
    fn degenerate_and_small_inputs() {
        assert!(matches!(estimate_student_t(&[3.0; 50], &IaOptions::default()), Err(Error::Degenerate(_))));
        let x: Vec<f64> = (0..20).map(|i| (i as f64 * 0.37).sin()).collect();
        match estimate_student_t(&x, &IaOptions::new(2.0, 1, 0)) {
            Ok(r) => assert!(r.warnings.iter().any(|w| w.contains("small sample"))),
            Err(e) => panic!("{e}"),
        }
    }

    fn mean_fit(p: FamilyParams, sided: Sided, n: usize) -> (f64, f64, f64) {
        // the triplet shape is noisy at this size, so average a few runs
        let runs = 5;
        let mut acc = (0.0, 0.0, 0.0);
        for seed in 0..runs {
            let x = p.sample(n, 100 + seed).values;
            let r = estimate_gpareto(&x, sided, &IaOptions::new(0.1, 10, seed)).unwrap();
            acc.0 += r.params.mu / runs as f64;
            acc.1 += r.params.sigma / runs as f64;
            acc.2 += r.params.kappa / runs as f64;
        }
        acc
    }

    #[test]
    fn one_sided_pareto_recovery() {
        let (_, s, k) = mean_fit(FamilyParams::gpareto_one_sided(0.0, 1.0, 1.0).unwrap(), Sided::One, 100_000);
        assert!((s - 1.0).abs() < 0.1, "{s}");
        assert!((k - 1.0).abs() < 0.15, "{k}");
        let e = FamilyParams::gpareto_one_sided(2.0, 1.0, 0.0).unwrap();
        let x = e.sample(100_000, 13).values;
        let r = estimate_gpareto(&x, Sided::One, &IaOptions::new(0.1, 10, 3)).unwrap();
        assert!(r.params.kappa < 0.1, "{r:?}");
        assert_eq!(r.params.mu, x.iter().copied().fold(f64::INFINITY, f64::min));
    }

    #[test]
    fn two_sided_pareto_recovery() {
        let (m, s, k) = mean_fit(FamilyParams::gpareto_two_sided(-1.0, 2.0, 0.5).unwrap(), Sided::Two, 100_000);
        assert!((m + 1.0).abs() < 0.05, "{m}");
        assert!((s - 2.0).abs() < 0.2, "{s}");
        assert!((k - 0.5).abs() < 0.2, "{k}");
    }
}
