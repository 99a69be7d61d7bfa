// Special functions and improper-integral quadrature.

use indapprox::numerics::{digamma, integrate_improper, log_gamma, reg_inc_beta, Domain};
use indapprox::Result;

pub fn run_example() -> Result<()> {
    println!("ln Γ(0.5) = {:.15}", log_gamma(0.5)?);
    println!("ψ(1) = {:.15}", digamma(1.0)?);
    println!("I_0.5(2, 3) = {:.15}", reg_inc_beta(2.0, 3.0, 0.5)?);
    let r = integrate_improper(|x| 1.0 / (std::f64::consts::PI * (1.0 + x * x)), Domain::full_line(), 1e-12)?;
    println!("∫ Cauchy pdf = {:.15} ({} evaluations)", r.value, r.evaluations);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
