//! Chirikov standard map and centered trajectory sums.
//!
//! `y_{n+1} = y_n + K sin x_n`, `x_{n+1} = x_n + y_{n+1}`. For each initial
//! condition the statistic is `z = Σ_{i=1..T} (x_i - ⟨x⟩)` with `⟨x⟩` the
//! mean over every iterate of every trajectory. Trajectories are simulated
//! twice (once for the global mean, once for z) so memory does not grow
//! with `T`.

use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{Provenance, SampleSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapConfig {
    /// Nonlinearity.
    pub k: f64,
    /// Number of initial conditions.
    pub m: usize,
    /// Iterations per trajectory.
    pub t: usize,
    pub seed: u64,
    /// Reduce x to [0, 2π) after every step.
    #[serde(default = "default_wrap")]
    pub wrap: bool,
}

fn default_wrap() -> bool {
    true
}

impl MapConfig {
    pub fn new(k: f64, m: usize, t: usize, seed: u64) -> Self {
        MapConfig { k, m, t, seed, wrap: true }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k >= 0.0) || !self.k.is_finite() {
            return Err(Error::domain(format!("K must be finite and non-negative, got {}", self.k)));
        }
        if self.m == 0 || self.t == 0 {
            return Err(Error::domain("M and T must be at least 1"));
        }
        Ok(())
    }

    /// Initial condition of trajectory `j`, uniform on the torus.
    pub fn initial_condition(&self, j: usize) -> (f64, f64) {
        let mut rng = crate::rng::stream(self.seed, j as u64);
        let x = rng.random::<f64>() * TAU;
        let y = rng.random::<f64>() * TAU;
        (x, y)
    }
}

/// Iterator over `x_1, x_2, ...` of one trajectory.
#[derive(Debug, Clone)]
pub struct Orbit {
    x: f64,
    y: f64,
    k: f64,
    wrap: bool,
}

impl Orbit {
    pub fn new(x0: f64, y0: f64, k: f64, wrap: bool) -> Self {
        Orbit { x: x0, y: y0, k, wrap }
    }
}

impl Iterator for Orbit {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        self.y += self.k * self.x.sin();
        self.x += self.y;
        if self.wrap {
            self.x = self.x.rem_euclid(TAU);
            // rem_euclid can round up to exactly 2π
            if self.x >= TAU {
                self.x = 0.0;
            }
        }
        Some(self.x)
    }
}

/// `x_0, ..., x_T` of one trajectory.
pub fn iterate_map(x0: f64, y0: f64, t: usize, k: f64, wrap: bool) -> Vec<f64> {
    std::iter::once(x0).chain(Orbit::new(x0, y0, k, wrap).take(t)).collect()
}

/// Neumaier-compensated sum.
fn compensated_sum<I: Iterator<Item = f64>>(it: I) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for v in it {
        let t = s + v;
        if s.abs() >= v.abs() {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    s + c
}

/// Pairwise sum in fixed index order.
fn tree_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => tree_sum(&v[..n / 2]) + tree_sum(&v[n / 2..]),
    }
}

/// z for each of the given initial conditions.
pub fn centered_sums(initial: &[(f64, f64)], t: usize, k: f64, wrap: bool) -> Vec<f64> {
    let sums: Vec<f64> = initial
        .par_iter()
        .map(|&(x, y)| compensated_sum(Orbit::new(x, y, k, wrap).take(t)))
        .collect();
    let mean = tree_sum(&sums) / (initial.len() as f64 * t as f64);
    initial
        .par_iter()
        .map(|&(x, y)| compensated_sum(Orbit::new(x, y, k, wrap).take(t).map(|v| v - mean)))
        .collect()
}

pub fn generate_z(cfg: &MapConfig) -> Result<SampleSet> {
    cfg.validate()?;
    let initial: Vec<(f64, f64)> = (0..cfg.m).into_par_iter().map(|j| cfg.initial_condition(j)).collect();
    Ok(SampleSet {
        values: centered_sums(&initial, cfg.t, cfg.k, cfg.wrap),
        provenance: Provenance {
            seed: Some(cfg.seed),
            source: Some(format!("standard map K={} M={} T={} wrap={}", cfg.k, cfg.m, cfg.t, cfg.wrap)),
        },
    })
}
