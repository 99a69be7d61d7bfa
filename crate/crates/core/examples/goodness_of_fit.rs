// Average log-likelihood, Cramér-von Mises and Kolmogorov-Smirnov for a
// right and a wrong model.

use indapprox::metrics::{avg_loglikelihood, cvm_statistic, ks_statistic};
use indapprox::{FamilyParams, Result};

pub fn run_example() -> Result<()> {
    let truth = FamilyParams::student_t(0.0, 1.0, 0.5)?;
    let x = truth.sample(2000, 77);
    for (name, p) in [("true", truth), ("gaussian", FamilyParams::student_t(0.0, 1.0, 0.0)?)] {
        let (w, pv) = cvm_statistic(&x, &p)?;
        println!(
            "{name:>8}: avg LL {:.4}  CvM {w:.4} (p {pv:.3})  KS {:.4}",
            avg_loglikelihood(&x, &p)?,
            ks_statistic(&x, &p)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
