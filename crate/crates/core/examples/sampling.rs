// Draw from each family and check the draws against the distribution.

use indapprox::distributions::{kappa_to_q, q_to_kappa, sigma_from_mode_density, QAlpha};
use indapprox::metrics::ks_statistic;
use indapprox::{Family, FamilyParams, Result};

pub fn run_example() -> Result<()> {
    for family in [Family::StudentT, Family::GparetoOneSided, Family::GparetoTwoSided] {
        let p = FamilyParams::new(family, 1.0, 2.0, 0.5)?;
        let x = p.sample(20_000, 42);
        let d = ks_statistic(&x, &p)?;
        let med = p.quantile(0.5)?;
        println!("{family:>18}: KS {d:.4}  median {med:.4}  cdf(median) {:.6}", p.cdf(med));
        assert!(d < 0.02);
    }

    let k = q_to_kappa(1.935, QAlpha::Two)?;
    println!("q = 1.935 -> kappa = {k:.5} (back to q = {:.3})", kappa_to_q(k, QAlpha::Two)?);
    println!("f(0) = 3.30, kappa = 0.878 -> sigma = {:.4}", sigma_from_mode_density(3.30, 0.878)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
