//! Student's t and generalized Pareto kernels in (location, scale, shape)
//! form.
//!
//! The shape κ is the reciprocal of the Student's t degrees of freedom and of
//! the Pareto tail index; κ = 0 selects the Gaussian / exponential limit,
//! which is evaluated through its own analytic branch. The two-sided Pareto
//! density is `(1/(2σ))·(1 + κ|x-μ|/σ)^-(1/κ+1)`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::roots::{find_root_bracketed, RootBracket};
use crate::numerics::special::{lbeta, reg_inc_beta};
use crate::rng;

const SAMPLE_CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    StudentT,
    GparetoOneSided,
    GparetoTwoSided,
}

impl Family {
    pub fn is_symmetric(self) -> bool {
        !matches!(self, Family::GparetoOneSided)
    }

    /// Name used on the command line.
    pub fn cli_name(self) -> &'static str {
        match self {
            Family::StudentT => "student-t",
            Family::GparetoOneSided => "gpareto-1s",
            Family::GparetoTwoSided => "gpareto-2s",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::StudentT => "student_t",
            Family::GparetoOneSided => "gpareto_one_sided",
            Family::GparetoTwoSided => "gpareto_two_sided",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "student_t" | "t" | "studentt" => Ok(Family::StudentT),
            "gpareto_1s" | "gpareto_one_sided" | "pareto" => Ok(Family::GparetoOneSided),
            "gpareto_2s" | "gpareto_two_sided" => Ok(Family::GparetoTwoSided),
            _ => Err(Error::Input(format!("unknown family '{s}'"))),
        }
    }
}

/// A distribution family with location μ, scale σ > 0 and shape κ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub mu: f64,
    pub sigma: f64,
    pub kappa: f64,
}

impl FamilyParams {
    pub fn new(family: Family, mu: f64, sigma: f64, kappa: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::domain(format!("location must be finite, got {mu}")));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::domain(format!("scale must be positive, got {sigma}")));
        }
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::domain(format!("shape must be non-negative, got {kappa}")));
        }
        Ok(FamilyParams { family, mu, sigma, kappa })
    }

    pub fn student_t(mu: f64, sigma: f64, kappa: f64) -> Result<Self> {
        Self::new(Family::StudentT, mu, sigma, kappa)
    }

    pub fn gpareto_one_sided(mu: f64, sigma: f64, kappa: f64) -> Result<Self> {
        Self::new(Family::GparetoOneSided, mu, sigma, kappa)
    }

    pub fn gpareto_two_sided(mu: f64, sigma: f64, kappa: f64) -> Result<Self> {
        Self::new(Family::GparetoTwoSided, mu, sigma, kappa)
    }

    pub fn with_family(self, family: Family) -> Self {
        FamilyParams { family, ..self }
    }

    /// Natural log of the density; `-inf` outside the support.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        let k = self.kappa;
        match self.family {
            Family::StudentT => {
                if k == 0.0 {
                    -0.5 * z * z - self.sigma.ln() - 0.5 * (2.0 * PI).ln()
                } else {
                    student_log_norm(k) - self.sigma.ln() - 0.5 * (1.0 / k + 1.0) * (k * z * z).ln_1p()
                }
            }
            Family::GparetoOneSided => {
                if z < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    pareto_log_kernel(z, k) - self.sigma.ln()
                }
            }
            Family::GparetoTwoSided => pareto_log_kernel(z.abs(), k) - (2.0 * self.sigma).ln(),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        match self.family {
            Family::StudentT => {
                if z <= 0.0 {
                    student_tail(-z, self.kappa)
                } else {
                    1.0 - student_tail(z, self.kappa)
                }
            }
            Family::GparetoOneSided => {
                if z <= 0.0 {
                    0.0
                } else {
                    pareto_cdf1(z, self.kappa)
                }
            }
            Family::GparetoTwoSided => {
                if z <= 0.0 {
                    0.5 * pareto_sf1(-z, self.kappa)
                } else {
                    0.5 + 0.5 * pareto_cdf1(z, self.kappa)
                }
            }
        }
    }

    /// Survival function 1 - F(x), computed without cancellation in the
    /// upper tail.
    pub fn sf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        match self.family {
            Family::StudentT => {
                if z >= 0.0 {
                    student_tail(z, self.kappa)
                } else {
                    1.0 - student_tail(-z, self.kappa)
                }
            }
            Family::GparetoOneSided => {
                if z <= 0.0 {
                    1.0
                } else {
                    pareto_sf1(z, self.kappa)
                }
            }
            Family::GparetoTwoSided => {
                if z >= 0.0 {
                    0.5 * pareto_sf1(z, self.kappa)
                } else {
                    0.5 + 0.5 * pareto_cdf1(-z, self.kappa)
                }
            }
        }
    }

    /// Inverse CDF for u in (0, 1).
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain(format!("quantile requires u in (0, 1), got {u}")));
        }
        let k = self.kappa;
        let z = match self.family {
            Family::GparetoOneSided => pareto_q1(u, k),
            Family::GparetoTwoSided => {
                if u >= 0.5 {
                    // upper half: one-sided tail mass 2(1-u)
                    pareto_q1_from_tail(2.0 * (1.0 - u), k)
                } else {
                    -pareto_q1_from_tail(2.0 * u, k)
                }
            }
            Family::StudentT => {
                if u == 0.5 {
                    0.0
                } else if u > 0.5 {
                    student_upper_quantile(1.0 - u, k)?
                } else {
                    -student_upper_quantile(u, k)?
                }
            }
        };
        Ok(self.mu + self.sigma * z)
    }

    /// Draw `n` samples deterministically from `seed`. Work is split into
    /// fixed-size chunks with derived seeds, so the output does not depend on
    /// the number of worker threads.
    pub fn sample(&self, n: usize, seed: u64) -> SampleSet {
        let chunks = n.div_ceil(SAMPLE_CHUNK);
        let parts: Vec<Vec<f64>> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let len = SAMPLE_CHUNK.min(n - c * SAMPLE_CHUNK);
                let mut rng = rng::stream(seed, c as u64);
                (0..len).map(|_| self.draw(&mut rng)).collect()
            })
            .collect();
        SampleSet {
            values: parts.concat(),
            provenance: Provenance {
                seed: Some(seed),
                source: Some(format!("{}(mu={}, sigma={}, kappa={})", self.family, self.mu, self.sigma, self.kappa)),
            },
        }
    }

    /// One draw from the distribution.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let k = self.kappa;
        let z = match self.family {
            Family::StudentT => {
                if k == 0.0 {
                    rng.sample::<f64, _>(StandardNormal)
                } else {
                    // standard t with 1/κ degrees of freedom has exactly the
                    // (0, 1, κ) density
                    StudentT::new(1.0 / k).expect("positive degrees of freedom").sample(rng)
                }
            }
            Family::GparetoOneSided => pareto_q1(rng.random::<f64>(), k),
            Family::GparetoTwoSided => {
                let negative: bool = rng.random();
                let m = pareto_q1(rng.random::<f64>(), k);
                if negative {
                    -m
                } else {
                    m
                }
            }
        };
        self.mu + self.sigma * z
    }
}

/// ln of √κ / B(1/(2κ), 1/2).
fn student_log_norm(k: f64) -> f64 {
    0.5 * k.ln() - lbeta(0.5 / k, 0.5)
}

fn pareto_log_kernel(z: f64, k: f64) -> f64 {
    if k == 0.0 {
        -z
    } else {
        -(1.0 / k + 1.0) * (k * z).ln_1p()
    }
}

fn pareto_sf1(z: f64, k: f64) -> f64 {
    if k == 0.0 {
        (-z).exp()
    } else {
        (-(k * z).ln_1p() / k).exp()
    }
}

fn pareto_cdf1(z: f64, k: f64) -> f64 {
    if k == 0.0 {
        -(-z).exp_m1()
    } else {
        -(-(k * z).ln_1p() / k).exp_m1()
    }
}

/// One-sided standardized quantile for u in [0, 1).
fn pareto_q1(u: f64, k: f64) -> f64 {
    let l = (-u).ln_1p();
    if k == 0.0 {
        -l
    } else {
        (-k * l).exp_m1() / k
    }
}

/// One-sided standardized quantile given the upper-tail mass.
fn pareto_q1_from_tail(tail: f64, k: f64) -> f64 {
    let l = tail.ln();
    if k == 0.0 {
        -l
    } else {
        (-k * l).exp_m1() / k
    }
}

/// Upper tail P(T > t) of the standardized Student's t for t ≥ 0.
fn student_tail(t: f64, k: f64) -> f64 {
    if k == 0.0 {
        return 0.5 * statrs::function::erf::erfc(t / SQRT_2);
    }
    let kt2 = k * t * t;
    if !kt2.is_finite() {
        return 0.0;
    }
    let dof = 1.0 / k;
    if kt2 < 1.0 {
        let x = kt2 / (1.0 + kt2);
        0.5 - 0.5 * reg_inc_beta(0.5, 0.5 * dof, x).unwrap_or(0.0)
    } else {
        0.5 * reg_inc_beta(0.5 * dof, 0.5, 1.0 / (1.0 + kt2)).unwrap_or(0.0)
    }
}

/// Standardized t such that P(T > t) = tail, for tail in (0, 1/2).
fn student_upper_quantile(tail: f64, k: f64) -> Result<f64> {
    if k == 1.0 {
        return Ok(1.0 / (PI * tail).tan());
    }
    if k == 0.0 {
        return Ok(SQRT_2 * statrs::function::erf::erfc_inv(2.0 * tail));
    }
    if k == 0.5 {
        // two degrees of freedom: closed form
        let u = 1.0 - tail;
        return Ok((2.0 * u - 1.0) / (2.0 * u * tail).sqrt());
    }
    let g = |t: f64| {
        let s = student_tail(t, k);
        // compare on the log scale for deep tails
        if tail < 1e-3 {
            s.ln() - tail.ln()
        } else {
            s - tail
        }
    };
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::domain(format!("quantile tail {tail} out of range")));
        }
    }
    let br = RootBracket::new(g, 0.0, hi)?;
    find_root_bracketed(g, br, 1e-15 * hi)
}

/// Where a sample came from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: Option<u64>,
    pub source: Option<String>,
}

/// An ordered collection of real values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

impl SampleSet {
    pub fn from_values(values: Vec<f64>) -> Self {
        SampleSet {
            values,
            provenance: Provenance::default(),
        }
    }
}

impl Deref for SampleSet {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

impl From<Vec<f64>> for SampleSet {
    fn from(values: Vec<f64>) -> Self {
        SampleSet::from_values(values)
    }
}

/// The power α of the variable in the q-statistics exponent: one for the
/// Pareto family, two for Student's t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QAlpha {
    One,
    Two,
}

impl QAlpha {
    pub fn value(self) -> f64 {
        match self {
            QAlpha::One => 1.0,
            QAlpha::Two => 2.0,
        }
    }

    pub fn for_family(family: Family) -> Self {
        match family {
            Family::StudentT => QAlpha::Two,
            _ => QAlpha::One,
        }
    }
}

/// q-statistics parameterization (q, α, β).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QTriplet {
    pub q: f64,
    pub alpha: QAlpha,
    pub beta: f64,
}

impl QTriplet {
    pub fn from_params(p: &FamilyParams) -> Result<Self> {
        let alpha = QAlpha::for_family(p.family);
        Ok(QTriplet {
            q: kappa_to_q(p.kappa, alpha)?,
            alpha,
            beta: sigma_to_beta(p.sigma, p.kappa, alpha)?,
        })
    }

    /// Shape and scale recovered from the triplet.
    pub fn shape_scale(&self) -> Result<(f64, f64)> {
        let kappa = q_to_kappa(self.q, self.alpha)?;
        Ok((kappa, beta_to_sigma(self.beta, kappa, self.alpha)?))
    }
}

/// q = 1 + ακ/(1+κ).
pub fn kappa_to_q(kappa: f64, alpha: QAlpha) -> Result<f64> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::domain(format!("shape must be non-negative, got {kappa}")));
    }
    Ok(1.0 + alpha.value() * kappa / (1.0 + kappa))
}

/// Inverse of [`kappa_to_q`]: κ = (q-1)/(α-q+1) for q in [1, 1+α).
pub fn q_to_kappa(q: f64, alpha: QAlpha) -> Result<f64> {
    let a = alpha.value();
    if !(q >= 1.0 && q < 1.0 + a) {
        return Err(Error::domain(format!("q must lie in [1, {}), got {q}", 1.0 + a)));
    }
    Ok((q - 1.0) / (a - q + 1.0))
}

/// β = κ/(|1-q|·σ^α). Taking |1-q| keeps β positive in the heavy-tailed
/// regime q > 1; with q from κ this reduces to (1+κ)/(α·σ^α), which is also
/// the Gaussian/exponential value at κ = 0.
pub fn sigma_to_beta(sigma: f64, kappa: f64, alpha: QAlpha) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("scale must be positive, got {sigma}")));
    }
    if !(kappa >= 0.0) {
        return Err(Error::domain(format!("shape must be non-negative, got {kappa}")));
    }
    let a = alpha.value();
    Ok((1.0 + kappa) / (a * sigma.powf(a)))
}

/// Inverse of [`sigma_to_beta`].
pub fn beta_to_sigma(beta: f64, kappa: f64, alpha: QAlpha) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::domain(format!("beta must be positive, got {beta}")));
    }
    if !(kappa >= 0.0) {
        return Err(Error::domain(format!("shape must be non-negative, got {kappa}")));
    }
    let a = alpha.value();
    Ok(((1.0 + kappa) / (a * beta)).powf(1.0 / a))
}

/// Student's t scale for which the density at the mode equals `f0`.
pub fn sigma_from_mode_density(f0: f64, kappa: f64) -> Result<f64> {
    if !(f0 > 0.0) || !f0.is_finite() {
        return Err(Error::domain(format!("mode density must be positive, got {f0}")));
    }
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::domain(format!("shape must be non-negative, got {kappa}")));
    }
    if kappa == 0.0 {
        return Ok(1.0 / (f0 * (2.0 * PI).sqrt()));
    }
    Ok(student_log_norm(kappa).exp() / f0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quadrature::{integrate_improper, Domain};

    fn st(mu: f64, s: f64, k: f64) -> FamilyParams {
        FamilyParams::student_t(mu, s, k).unwrap()
    }

    /// KS distance against a cdf, computed independently of the metrics module.
    fn ks(mut v: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
        v.sort_by(f64::total_cmp);
        let n = v.len() as f64;
        v.iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).max((i + 1) as f64 / n - f)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn pdf_anchors() {
        let c = st(0.0, 1.0, 1.0);
        assert!((c.pdf(0.0) - 1.0 / PI).abs() < 1e-15);
        assert!((c.pdf(1.0) - 0.5 / PI).abs() < 1e-15);
        let p = FamilyParams::gpareto_one_sided(3.0, 2.5, 0.7).unwrap();
        assert!((p.pdf(3.0) - 1.0 / 2.5).abs() < 1e-15);
        assert_eq!(p.pdf(2.999), 0.0);
        let t = FamilyParams::gpareto_two_sided(0.0, 1.0, 1.0).unwrap();
        assert!((t.pdf(1.0) - 0.125).abs() < 1e-15);
        assert!((t.pdf(-1.0) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyParams::student_t(0.0, 0.0, 1.0).is_err());
        assert!(FamilyParams::student_t(0.0, 1.0, -0.1).is_err());
        assert!(FamilyParams::student_t(f64::NAN, 1.0, 0.1).is_err());
        assert_eq!("gpareto-1s".parse::<Family>().unwrap(), Family::GparetoOneSided);
        assert_eq!("student-t".parse::<Family>().unwrap(), Family::StudentT);
        assert!("levy".parse::<Family>().is_err());
    }

    #[test]
    fn cdf_anchors() {
        let p = FamilyParams::gpareto_one_sided(0.0, 1.0, 1.0).unwrap();
        assert!((p.sf(1.0) - 0.5).abs() < 1e-15);
        let c = st(0.0, 1.0, 1.0);
        assert!((c.cdf(1.0) - 0.75).abs() < 1e-14);
        for fam in [Family::StudentT, Family::GparetoTwoSided] {
            for k in [0.0, 0.3, 1.0, 4.0] {
                let p = FamilyParams::new(fam, 1.5, 2.0, k).unwrap();
                assert!((p.cdf(1.5) - 0.5).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn quantile_anchors() {
        let p = FamilyParams::gpareto_one_sided(0.0, 1.0, 1.0).unwrap();
        assert!((p.quantile(0.75).unwrap() - 3.0).abs() < 1e-12);
        let k: f64 = 0.4;
        let p = FamilyParams::gpareto_one_sided(0.0, 1.0, k).unwrap();
        assert!((p.quantile(0.75).unwrap() - (0.25f64.powf(-k) - 1.0) / k).abs() < 1e-12);
        assert!((st(0.0, 1.0, 1.0).quantile(0.75).unwrap() - 1.0).abs() < 1e-12);
        for k in [0.0, 0.25, 2.0] {
            assert!((st(-2.0, 3.0, k).quantile(0.5).unwrap() + 2.0).abs() < 1e-12);
            let two = FamilyParams::gpareto_two_sided(-2.0, 3.0, k).unwrap();
            assert!((two.quantile(0.5).unwrap() + 2.0).abs() < 1e-12);
        }
        assert!(p.quantile(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        for fam in [Family::StudentT, Family::GparetoOneSided, Family::GparetoTwoSided] {
            for k in [0.0, 0.1, 0.5, 0.7, 1.0, 2.0, 4.0] {
                let p = FamilyParams::new(fam, 0.3, 1.7, k).unwrap();
                for &u in &[1e-9, 1e-4, 0.02, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-7] {
                    let x = p.quantile(u).unwrap();
                    assert!((p.cdf(x) - u).abs() < 1e-10, "{fam} k={k} u={u}");
                }
                for &x in &[-3.0, 0.31, 1.0, 12.0] {
                    let u = p.cdf(x);
                    if u > 1e-6 && u < 1.0 - 1e-6 {
                        let back = p.quantile(u).unwrap();
                        assert!((back - x).abs() < 1e-8 * (1.0 + x.abs()), "{fam} k={k} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn densities_integrate_to_one() {
        for fam in [Family::StudentT, Family::GparetoOneSided, Family::GparetoTwoSided] {
            for k in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0] {
                for s in [0.5, 1.0, 5.0] {
                    let p = FamilyParams::new(fam, 0.7, s, k).unwrap();
                    let domain = match fam {
                        Family::GparetoOneSided => Domain::HalfLine { from: 0.7, scale: s },
                        _ => Domain::FullLine { center: 0.7, scale: s },
                    };
                    let r = integrate_improper(|x| p.pdf(x), domain, 1e-10).unwrap();
                    assert!((r.value - 1.0).abs() < 1e-8, "{fam} k={k} s={s}: {}", r.value);
                }
            }
        }
    }

    #[test]
    fn cdf_matches_integrated_pdf() {
        for fam in [Family::StudentT, Family::GparetoTwoSided] {
            for k in [0.2, 1.0, 3.0] {
                let p = FamilyParams::new(fam, 0.0, 1.0, k).unwrap();
                for &x in &[0.5, 2.0, 10.0] {
                    let tail = integrate_improper(|y| p.pdf(y), Domain::HalfLine { from: x, scale: 1.0 }, 1e-10)
                        .unwrap()
                        .value;
                    assert!((p.sf(x) - tail).abs() < 1e-10, "{fam} k={k} x={x}");
                }
            }
        }
    }

    #[test]
    fn zero_shape_limits() {
        let p = FamilyParams::gpareto_one_sided(1.0, 2.0, 0.0).unwrap();
        for &x in &[1.0, 1.5, 4.0, 30.0] {
            let e = 0.5 * (-(x - 1.0) / 2.0f64).exp();
            assert!((p.pdf(x) - e).abs() < 1e-10);
        }
        let g = st(0.0, 1.0, 0.0);
        let near = st(0.0, 1.0, 1e-6);
        for &x in &[0.0, 0.5, 1.0, 2.0, 3.0] {
            assert!((g.pdf(x) - near.pdf(x)).abs() < 1e-4);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = st(0.0, 1.0, 0.5);
        assert_eq!(p.sample(1000, 7), p.sample(1000, 7));
        assert_ne!(p.sample(1000, 7).values, p.sample(1000, 8).values);
        assert!(p.sample(0, 1).is_empty());
    }

    #[test]
    fn student_sampling_matches_cdf() {
        let p = st(0.0, 1.0, 0.5);
        let n = 100_000;
        let d = ks(p.sample(n, 11).values, |x| p.cdf(x));
        assert!(d <= 1.63 / (n as f64).sqrt(), "KS = {d}");
    }

    #[test]
    fn pareto_sampling_median() {
        let p = FamilyParams::gpareto_one_sided(2.0, 1.0, 1.0).unwrap();
        let mut v = p.sample(100_000, 5).values;
        v.sort_by(f64::total_cmp);
        let med = 0.5 * (v[49_999] + v[50_000]);
        assert!((med - p.quantile(0.5).unwrap()).abs() < 0.05);
        assert!(v[0] >= 2.0);
        let two = FamilyParams::gpareto_two_sided(0.0, 1.0, 0.5).unwrap();
        let d = ks(two.sample(100_000, 3).values, |x| two.cdf(x));
        assert!(d <= 1.63 / (1e5f64).sqrt(), "KS = {d}");
    }

    #[test]
    fn scale_equivariant_sampling() {
        let base = st(0.0, 1.0, 0.7);
        let moved = st(3.0, 2.5, 0.7);
        let n = 100_000;
        let d = ks(moved.sample(n, 21).values, |x| base.cdf((x - 3.0) / 2.5));
        assert!(d <= 1.63 / (n as f64).sqrt(), "KS = {d}");
    }

    #[test]
    fn q_conversions() {
        let k = q_to_kappa(1.935, QAlpha::Two).unwrap();
        assert!((k - 0.935 / 1.065).abs() < 1e-15);
        assert!((k - 0.87793).abs() < 1e-5);
        assert_eq!(q_to_kappa(1.0, QAlpha::One).unwrap(), 0.0);
        assert_eq!(q_to_kappa(1.0, QAlpha::Two).unwrap(), 0.0);
        assert!((kappa_to_q(1.0, QAlpha::One).unwrap() - 1.5).abs() < 1e-15);
        assert!(q_to_kappa(3.0, QAlpha::Two).is_err());
        assert!(q_to_kappa(0.9, QAlpha::One).is_err());
        for a in [QAlpha::One, QAlpha::Two] {
            for &k in &[0.0, 0.01, 0.5, 1.0, 7.0, 1e3] {
                let back = q_to_kappa(kappa_to_q(k, a).unwrap(), a).unwrap();
                assert!((back - k).abs() <= 1e-12 * k.max(1.0), "{k}");
            }
        }
        // β(1-q) = κ/σ^α up to sign
        let p = st(0.0, 0.8, 0.6);
        let t = QTriplet::from_params(&p).unwrap();
        assert!((t.beta * (t.q - 1.0) - 0.6 / 0.64).abs() < 1e-12);
        let (k, s) = t.shape_scale().unwrap();
        assert!((k - 0.6).abs() < 1e-12 && (s - 0.8).abs() < 1e-12);
        // Gaussian limit β = 1/(2σ²)
        assert!((sigma_to_beta(2.0, 0.0, QAlpha::Two).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn mode_density_scale() {
        let s = sigma_from_mode_density(3.30, 0.878).unwrap();
        assert!((s - 0.0989).abs() < 1e-3, "{s}");
        assert!((sigma_from_mode_density(1.0 / PI, 1.0).unwrap() - 1.0).abs() < 1e-14);
        for &(f0, k) in &[(3.30, 0.878), (0.2, 0.1), (10.0, 3.0), (0.5, 0.0)] {
            let s = sigma_from_mode_density(f0, k).unwrap();
            assert!((st(0.0, s, k).pdf(0.0) - f0).abs() < 1e-10 * f0);
        }
        assert!(sigma_from_mode_density(0.0, 1.0).is_err());
    }
}
