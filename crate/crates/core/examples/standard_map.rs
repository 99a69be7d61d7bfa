// Heavy-tailed sums from the linear standard map, fitted as Student's t.

use indapprox::estimators::{estimate_student_t, IaOptions};
use indapprox::standard_map::{generate_z, iterate_map, MapConfig};
use indapprox::Result;

pub fn run_example() -> Result<()> {
    println!("orbit: {:?}", iterate_map(1.0, 0.5, 4, 0.9, true));
    let z = generate_z(&MapConfig::new(0.0, 4000, 500, 1))?;
    let r = estimate_student_t(&z, &IaOptions::default())?;
    println!("K = 0: mu {:.3} sigma {:.3} kappa {:.3}", r.params.mu, r.params.sigma, r.params.kappa);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
