// A small bias and precision benchmark over a location-scale grid.

use indapprox::metrics::{run_benchmark, BenchmarkConfig};
use indapprox::{Family, Result};

pub fn run_example() -> Result<()> {
    let cfg = BenchmarkConfig {
        family: Family::StudentT,
        shapes: vec![0.25, 1.0],
        locations: vec![0.0, 10.0],
        scales: vec![0.5, 2.0],
        sizes: vec![5000],
        trials: 5,
        epsilon: 0.1,
        permutations: 10,
        seed: 1,
        cells: None,
    };
    let table = run_benchmark(&cfg)?;
    print!("{}", table.to_markdown());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
