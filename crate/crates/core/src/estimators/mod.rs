//! Parameter estimators: the independent-approximates pipelines for Student's
//! t and generalized Pareto, plus Hill and maximum-likelihood baselines.

pub mod hill;
pub mod ia;
pub mod mle;
pub mod shape;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::distributions::FamilyParams;

pub use hill::{hill_estimate, hill_path, hill_stable_average, HillAverage};
pub use ia::{
    estimate_gpareto, estimate_location_ia, estimate_scale_student_ia, estimate_student_t, IaOptions, ShapeMethod,
};
pub use mle::{mle_fit, MleFit};
pub use shape::{estimate_shape_geometric_mean, shape_from_log_mean, ShapeSolve};

/// Predicted scale bias and the location and scale precisions for given
/// selection counts. Precisions are infinite where they do not exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryPrediction {
    pub scale_bias: f64,
    pub loc_precision: f64,
    pub scale_precision: f64,
}

pub fn predict_bias_precision(kappa: f64, sigma: f64, n2: usize, n3: usize) -> TheoryPrediction {
    let n2f = n2 as f64;
    let n3f = n3 as f64;
    let scale_bias = if n2 == 0 { f64::NEG_INFINITY } else { -sigma / n2f };
    let loc_precision = if kappa < 2.0 && n2 > 0 {
        sigma / ((2.0 - kappa) * n2f).sqrt()
    } else {
        f64::INFINITY
    };
    let scale_precision = if kappa < 1.5 && n2 > 0 && n3 > 0 {
        let t = 1.0 / ((2.0 - kappa) * n2f);
        3.0 * sigma * sigma / n3f.sqrt() * (1.0 / (3.0 - 2.0 * kappa) + t * t).sqrt()
    } else {
        f64::INFINITY
    };
    TheoryPrediction {
        scale_bias,
        loc_precision,
        scale_precision,
    }
}

/// Result of an estimation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub params: FamilyParams,
    pub n2: usize,
    pub n3: usize,
    pub epsilon: f64,
    pub permutations: usize,
    pub theory: TheoryPrediction,
    pub warnings: Vec<String>,
}

impl EstimateReport {
    /// JSON document with a fixed key layout. Infinite values are written as
    /// the string `"inf"` (or `"-inf"`).
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.params.family.to_string(),
            "mu": num(self.params.mu),
            "sigma": num(self.params.sigma),
            "kappa": num(self.params.kappa),
            "n2": self.n2,
            "n3": self.n3,
            "epsilon": num(self.epsilon),
            "permutations": self.permutations,
            "warnings": self.warnings,
            "theory": {
                "scale_bias": num(self.theory.scale_bias),
                "loc_precision": num(self.theory.loc_precision),
                "scale_precision": num(self.theory.scale_precision),
            },
        })
    }
}

/// JSON value for a float; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        Value::Null
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}
