// Shape from the log-average of absolute deviations with known location
// and scale.

use indapprox::estimators::{estimate_shape_geometric_mean, shape_from_log_mean};
use indapprox::{FamilyParams, Result};

pub fn run_example() -> Result<()> {
    // a geometric mean equal to the scale means Cauchy
    println!("zero log-ratio -> kappa {:.6}", shape_from_log_mean(0.0)?.kappa);
    for kappa in [0.25, 0.5, 1.0, 2.0] {
        let p = FamilyParams::student_t(0.0, 1.0, kappa)?;
        let x = p.sample(100_000, 1);
        let s = estimate_shape_geometric_mean(&x, 0.0, 1.0)?;
        println!("kappa {kappa:.2} -> {:.4}", s.kappa);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
