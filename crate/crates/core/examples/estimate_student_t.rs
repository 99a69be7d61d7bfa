// Recover location, scale and shape of a Student's t sample.

use indapprox::estimators::{estimate_student_t, IaOptions};
use indapprox::{FamilyParams, Result};

pub fn run_example() -> Result<()> {
    let truth = FamilyParams::student_t(5.0, 2.0, 0.5)?;
    let x = truth.sample(10_000, 2024);
    let r = estimate_student_t(&x, &IaOptions::default())?;
    println!("truth    mu {:.3} sigma {:.3} kappa {:.3}", truth.mu, truth.sigma, truth.kappa);
    println!("estimate mu {:.3} sigma {:.3} kappa {:.3}", r.params.mu, r.params.sigma, r.params.kappa);
    println!("{} pairs, {} triplets; predicted location precision {:.4}", r.n2, r.n3, r.theory.loc_precision);
    println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
