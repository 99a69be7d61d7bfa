//! Moments of normalized powers of a density, `∫ x^m f^n / ∫ f^n`.
//!
//! Raising a Student's t or generalized Pareto density to a power gives a
//! member of the same family with a lighter shape, so the power-moments have
//! closed forms. A quadrature oracle evaluates the defining ratio directly
//! and is used to check every closed form.

use serde::{Deserialize, Serialize};

use crate::distributions::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_improper_with, Domain, QuadratureOptions};
use crate::numerics::special::lgamma;

/// The m-th moment under the n-th power of a density, optionally about the
/// location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerMomentSpec {
    pub m: u32,
    pub n: u32,
    pub centered: bool,
}

impl PowerMomentSpec {
    pub fn centered(m: u32, n: u32) -> Self {
        PowerMomentSpec { m, n, centered: true }
    }

    pub fn raw(m: u32, n: u32) -> Self {
        PowerMomentSpec { m, n, centered: false }
    }

    /// Largest shape for which the moment is finite, if bounded.
    pub fn shape_bound(&self) -> Option<f64> {
        let d = self.m as i64 + 1 - self.n as i64;
        (d > 0).then(|| self.n as f64 / d as f64)
    }

    fn check(&self, kappa: f64) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("density power must be at least 1"));
        }
        if let Some(bound) = self.shape_bound() {
            if kappa >= bound {
                return Err(Error::domain(format!(
                    "moment m={} of power n={} needs kappa < {} = n/(1+m-n), got {kappa}",
                    self.m, self.n, bound
                )));
            }
        }
        Ok(())
    }
}

/// Parameters of the normalized `power`-th power of the density.
pub fn power_density_params(p: &FamilyParams, power: u32) -> Result<FamilyParams> {
    if power == 0 {
        return Err(Error::domain("density power must be at least 1"));
    }
    let d = power as f64 + (power as f64 - 1.0) * p.kappa;
    let kappa = p.kappa / d;
    let sigma = match p.family {
        Family::StudentT => p.sigma / d.sqrt(),
        _ => p.sigma / d,
    };
    FamilyParams::new(p.family, p.mu, sigma, kappa)
}

/// Closed-form power-moment for Student's t, evaluated through log-gamma.
pub fn student_t_power_moment(p: &FamilyParams, spec: PowerMomentSpec) -> Result<f64> {
    if p.family != Family::StudentT {
        return Err(Error::domain(format!("expected a Student's t family, got {}", p.family)));
    }
    spec.check(p.kappa)?;
    let (n, k, s) = (spec.n as f64, p.kappa, p.sigma);
    let central = |m: u32| -> f64 {
        if m % 2 == 1 {
            return 0.0;
        }
        if m == 0 {
            return 1.0;
        }
        let mf = m as f64;
        if k == 0.0 {
            // Gaussian with variance σ²/n
            return double_factorial(m - 1) * (s * s / n).powf(0.5 * mf);
        }
        let a = 0.5 * n / k + 0.5 * (n - mf - 1.0);
        let b = 0.5 * n / k + 0.5 * (n - 1.0);
        let log = -0.5 * mf * k.ln() + mf * s.ln() + lgamma(0.5 * (mf + 1.0)) + lgamma(a) - lgamma(b)
            - 0.5 * std::f64::consts::PI.ln();
        log.exp()
    };
    Ok(shift_moments(central, spec, p.mu))
}

/// Closed-form power-moment for the one- and two-sided generalized Pareto.
///
/// Under the n-th power, the one-sided excess `Y = X - μ` is again
/// generalized Pareto with shape κ' and scale σ', and
/// `E[Y^m] = m!·σ'^m / Π_{j=1..m} (1 - jκ')`. The two-sided density is
/// symmetric with `|X - μ|` distributed as the one-sided case.
pub fn pareto_power_moment(p: &FamilyParams, spec: PowerMomentSpec) -> Result<f64> {
    if p.family == Family::StudentT {
        return Err(Error::domain("expected a generalized Pareto family"));
    }
    spec.check(p.kappa)?;
    let t = power_density_params(p, spec.n)?;
    let two_sided = p.family == Family::GparetoTwoSided;
    let central = |m: u32| -> f64 {
        if two_sided && m % 2 == 1 {
            return 0.0;
        }
        let mut v = 1.0;
        for j in 1..=m {
            v *= j as f64 * t.sigma / (1.0 - j as f64 * t.kappa);
        }
        v
    };
    Ok(shift_moments(central, spec, p.mu))
}

/// Closed-form power-moment for any family.
pub fn power_moment(p: &FamilyParams, spec: PowerMomentSpec) -> Result<f64> {
    match p.family {
        Family::StudentT => student_t_power_moment(p, spec),
        _ => pareto_power_moment(p, spec),
    }
}

fn shift_moments(central: impl Fn(u32) -> f64, spec: PowerMomentSpec, mu: f64) -> f64 {
    if spec.centered || mu == 0.0 {
        return central(spec.m);
    }
    // E[(μ + Y)^m] = Σ C(m,k) μ^(m-k) E[Y^k]
    let m = spec.m;
    let mut binom = 1.0;
    let mut total = 0.0;
    for k in 0..=m {
        total += binom * mu.powi((m - k) as i32) * central(k);
        binom = binom * (m - k) as f64 / (k + 1) as f64;
    }
    total
}

fn double_factorial(k: u32) -> f64 {
    (1..=k).rev().step_by(2).map(|v| v as f64).product()
}

/// Power-moment by direct quadrature of the defining ratio.
pub fn power_moment_oracle(p: &FamilyParams, spec: PowerMomentSpec) -> Result<f64> {
    if spec.n == 0 {
        return Err(Error::domain("density power must be at least 1"));
    }
    if p.kappa > 0.0 {
        let (m, n) = (spec.m as f64, spec.n as f64);
        if m >= n * (1.0 / p.kappa + 1.0) - 1.0 {
            return Err(Error::Divergent(format!(
                "m={} under power n={} diverges for kappa={} (needs m < n(1/kappa+1)-1)",
                spec.m, spec.n, p.kappa
            )));
        }
    }
    let n = spec.n as f64;
    let peak = p.ln_pdf(p.mu);
    let weight = |x: f64| {
        let l = p.ln_pdf(x);
        if l == f64::NEG_INFINITY {
            0.0
        } else {
            (n * (l - peak)).exp()
        }
    };
    let c = if spec.centered { p.mu } else { 0.0 };
    let width = power_density_params(p, spec.n)?.sigma;
    let opts = QuadratureOptions {
        rel_tol: 1e-12,
        ..QuadratureOptions::default()
    };

    let halves: &[f64] = if p.family == Family::GparetoOneSided { &[1.0] } else { &[1.0, -1.0] };
    let mut den = 0.0;
    let mut num = 0.0;
    for &dir in halves {
        let domain = Domain::HalfLine { from: p.mu, scale: width };
        let side = |x: f64| if (x - p.mu) * dir >= 0.0 { 1.0 } else { 0.0 };
        let mirror = |x: f64| p.mu + dir * (x - p.mu);
        let d = integrate_improper_with(|x| weight(mirror(x)) * side(mirror(x)), domain, opts)?.value;
        let mag = (width + (p.mu - c).abs()).powi(spec.m as i32);
        let num_opts = QuadratureOptions {
            abs_tol: 1e-14 * mag * d,
            ..opts
        };
        let v = integrate_improper_with(
            |x| {
                let y = mirror(x);
                (y - c).powi(spec.m as i32) * weight(y)
            },
            domain,
            num_opts,
        )?
        .value;
        den += d;
        num += v;
    }
    Ok(num / den)
}

/// Location from the first moment of the squared density of a symmetric
/// family: the two coincide.
pub fn invert_location_two_sided(mu1_2: f64) -> f64 {
    mu1_2
}

/// Student's t scale from the centered second moment of the cubed density,
/// `σ = √(3·μ₂)`.
pub fn invert_scale_student(mu2_3: f64) -> Result<f64> {
    if !(mu2_3 >= 0.0) {
        return Err(Error::domain(format!("second moment must be non-negative, got {mu2_3}")));
    }
    Ok((3.0 * mu2_3).sqrt())
}

/// One-sided Pareto scale from the centered first moment of the squared
/// density, `σ = 2·μ₁`. Does not depend on the shape.
pub fn invert_scale_pareto_one_sided(mu1_2: f64) -> Result<f64> {
    if !(mu1_2 >= 0.0) {
        return Err(Error::domain(format!("first moment must be non-negative, got {mu1_2}")));
    }
    Ok(2.0 * mu1_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sided {
    One,
    Two,
}

/// A shape recovered from a moment relation. Negative solutions are clipped
/// to zero and flagged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeInversion {
    pub kappa: f64,
    pub clipped: bool,
}

impl ShapeInversion {
    fn clip(kappa: f64) -> Self {
        if kappa < 0.0 {
            ShapeInversion { kappa: 0.0, clipped: true }
        } else {
            ShapeInversion { kappa, clipped: false }
        }
    }
}

/// Pareto shape from the centered second moment of the cubed density,
/// `κ = 2σ²/(3μ₂) - 3`. The two-sided second moment equals the one-sided
/// one, so both share this relation.
pub fn invert_shape_pareto(mu2_3: f64, sigma: f64, _sided: Sided) -> Result<ShapeInversion> {
    if !(mu2_3 > 0.0) || !(sigma > 0.0) {
        return Err(Error::domain(format!(
            "moment and scale must be positive, got {mu2_3} and {sigma}"
        )));
    }
    Ok(ShapeInversion::clip(2.0 * sigma * sigma / (3.0 * mu2_3) - 3.0))
}

/// Student's t shape from the centered second moment of the fourth-power
/// density, `κ = σ²/μ₂ - 4`.
pub fn invert_shape_student_alt(mu2_4: f64, sigma: f64) -> Result<ShapeInversion> {
    if !(mu2_4 > 0.0) || !(sigma > 0.0) {
        return Err(Error::domain(format!(
            "moment and scale must be positive, got {mu2_4} and {sigma}"
        )));
    }
    Ok(ShapeInversion::clip(sigma * sigma / mu2_4 - 4.0))
}
