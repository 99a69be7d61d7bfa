//! Special functions: log-gamma, digamma, real-argument harmonic numbers and
//! the regularized incomplete beta function.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(lgamma(x))
}

/// Unchecked ln Γ(x); caller guarantees x > 0.
pub(crate) fn lgamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// ln B(a, b).
pub(crate) fn lbeta(a: f64, b: f64) -> f64 {
    lgamma(a) + lgamma(b) - lgamma(a + b)
}

/// ψ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("digamma requires x > 0, got {x}")));
    }
    Ok(statrs::function::gamma::digamma(x))
}

/// Harmonic number extended to real arguments, H_z = ψ(z + 1) + γ.
pub fn harmonic_real(z: f64) -> Result<f64> {
    if !(z > -1.0) || !z.is_finite() {
        return Err(Error::domain(format!("harmonic_real requires z > -1, got {z}")));
    }
    // small positive integers are summed directly so that H_n is exact
    if z.fract() == 0.0 && z <= 64.0 {
        let n = z as u32;
        return Ok((1..=n).rev().map(|k| 1.0 / k as f64).sum());
    }
    Ok(statrs::function::gamma::digamma(z + 1.0) + EULER_GAMMA)
}

/// Regularized incomplete beta I_x(a, b).
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain(format!(
            "reg_inc_beta requires a, b > 0, got a = {a}, b = {b}"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("reg_inc_beta requires x in [0, 1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    Ok(statrs::function::beta::beta_reg(a, b, x).clamp(0.0, 1.0))
}
