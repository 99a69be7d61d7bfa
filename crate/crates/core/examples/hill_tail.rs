// Hill estimates on a Pareto quantile grid.

use indapprox::estimators::{hill_estimate, hill_path, hill_stable_average};
use indapprox::Result;

pub fn run_example() -> Result<()> {
    println!("hand fixture: {:.4}", hill_estimate(&[16.0, 2.0, 8.0, 1.0, 4.0], 4)?);
    let n = 10_000;
    let x: Vec<f64> = (0..n).map(|i| (1.0 - (i as f64 + 0.5) / n as f64).powf(-0.5)).collect();
    let path = hill_path(&x, 10, 2000)?;
    println!("k = 10: {:.4}, k = 2000: {:.4}", path[0], path[path.len() - 1]);
    let h = hill_stable_average(&x, 10, 2000)?;
    println!("stable average {:.4} over k in [{}, {}] ({})", h.kappa, h.k_used.0, h.k_used.1, h.rule);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
