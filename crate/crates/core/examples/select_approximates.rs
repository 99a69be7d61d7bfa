// Pick approximately equal pairs and triplets out of a Cauchy sample.
// Pair representatives follow the squared density, itself a Student's t.

use indapprox::ia_select::{select_pairs, select_triplets_abs, OffsetMode};
use indapprox::metrics::ks_statistic;
use indapprox::{FamilyParams, Result};

pub fn run_example() -> Result<()> {
    let cauchy = FamilyParams::student_t(0.0, 1.0, 1.0)?;
    let x = cauchy.sample(200_000, 3);

    let pairs = select_pairs(&x, 0.05, 1, OffsetMode::Disjoint, 11)?;
    let reps: Vec<f64> = pairs.representatives().iter().map(|&z| pairs.state.denormalize(z)).collect();
    let squared = FamilyParams::student_t(0.0, 1.0 / 3f64.sqrt(), 1.0 / 3.0)?;
    let d = ks_statistic(&reps, &squared)?;
    println!("{} pairs, KS against the squared density {d:.4} (bound {:.4})", reps.len(), 2.0 / (reps.len() as f64).sqrt());

    let triplets = select_triplets_abs(&x, 0.1, 2, OffsetMode::Disjoint, 12)?;
    let t = triplets.tuple(0);
    println!("{} abs triplets; first uses samples {:?}", triplets.count(), t);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
