// Independent-approximates fit next to maximum likelihood on a small
// Cauchy sample.

use indapprox::estimators::{estimate_student_t, mle_fit, IaOptions};
use indapprox::metrics::avg_loglikelihood;
use indapprox::{Family, FamilyParams, Result};

pub fn run_example() -> Result<()> {
    let x = FamilyParams::student_t(0.0, 1.0, 1.0)?.sample(100, 5);
    let ia = estimate_student_t(&x, &IaOptions::new(1.0, 5, 5))?;
    let ml = mle_fit(&x, Family::StudentT, &ia.params)?;
    println!("IA  {:?} avg LL {:.4}", ia.params, avg_loglikelihood(&x, &ia.params)?);
    println!("MLE {:?} avg LL {:.4}", ml.params, ml.avg_loglik);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
