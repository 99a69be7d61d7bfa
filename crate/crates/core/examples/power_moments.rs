// Closed-form moments of power densities next to direct quadrature.

use indapprox::power_moments::{power_moment, power_moment_oracle, PowerMomentSpec};
use indapprox::{Family, FamilyParams, Result};

pub fn run_example() -> Result<()> {
    println!("{:>18} {:>3} {:>3} {:>14} {:>14}", "family", "n", "m", "closed", "quadrature");
    for family in [Family::StudentT, Family::GparetoOneSided, Family::GparetoTwoSided] {
        let p = FamilyParams::new(family, 0.0, 1.5, 0.5)?;
        for n in 2..=4 {
            let spec = PowerMomentSpec::centered(2, n);
            let a = power_moment(&p, spec)?;
            let b = power_moment_oracle(&p, spec)?;
            println!("{family:>18} {n:>3} {:>3} {a:>14.10} {b:>14.10}", 2);
            assert!(((a - b) / b).abs() < 1e-7);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
