// Fit one- and two-sided generalized Pareto samples.

use indapprox::estimators::{estimate_gpareto, IaOptions};
use indapprox::power_moments::Sided;
use indapprox::{FamilyParams, Result};

pub fn run_example() -> Result<()> {
    let one = FamilyParams::gpareto_one_sided(3.0, 1.0, 0.5)?;
    let x = one.sample(50_000, 8);
    let r = estimate_gpareto(&x, Sided::One, &IaOptions::default())?;
    println!("one-sided: mu {:.3} sigma {:.3} kappa {:.3}", r.params.mu, r.params.sigma, r.params.kappa);
    for w in &r.warnings {
        println!("  note: {w}");
    }

    let two = FamilyParams::gpareto_two_sided(-1.0, 2.0, 0.5)?;
    let x = two.sample(50_000, 9);
    let r = estimate_gpareto(&x, Sided::Two, &IaOptions::default())?;
    println!("two-sided: mu {:.3} sigma {:.3} kappa {:.3}", r.params.mu, r.params.sigma, r.params.kappa);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
