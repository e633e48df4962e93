//! The mean-density comparison: for each matrix size N, the local density
//! is estimated from the K eigenvalues nearest E(N) = π√(2N) − 2π and set
//! against the logarithmic prediction log(E/2π)/π. K = 2 fluctuates
//! visibly; K = 3 is already hard to distinguish from the prediction.
//!
//! Run with `cargo run --release --example density_sweep [n_min n_max step]`.

use torusweyl::bk;
use torusweyl::eigen;
use torusweyl::stats::{self, SweepPlan};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    let (n_min, n_max, step) = match args.as_slice() {
        [a, b, c] => (*a, *b, *c),
        _ => (500, 900, 100),
    };
    let n_values: Vec<usize> = (n_min..=n_max).step_by(step).collect();

    // spectra are shared between the two K values
    let mut spectra = Vec::new();
    for &n in &n_values {
        let plan = SweepPlan::new(vec![n], 2).unwrap();
        let g = plan.geometry(n).unwrap();
        let dec = eigen::eigendecompose(&bk::assemble_appendix_b(g), false).unwrap();
        spectra.push(dec.record.eigenvalues);
    }

    for k in [2usize, 3] {
        let plan = SweepPlan::new(n_values.clone(), k).unwrap();
        println!("\nK = {k}:");
        println!("{:>6} {:>12} {:>10} {:>14} {:>10}", "N", "E(N)", "d^K", "log(E/2pi)/pi", "rel dev");
        let mut devs = Vec::new();
        for (&n, evs) in n_values.iter().zip(&spectra) {
            let row = stats::sweep_row(&plan, n, evs).unwrap();
            println!(
                "{n:>6} {:>12.4} {:>10.5} {:>14.5} {:>10.5}",
                row.energy, row.dk, row.mean_density, row.rel_deviation
            );
            devs.push(row.rel_deviation);
        }
        println!(
            "mean relative deviation: {:.5}",
            devs.iter().sum::<f64>() / devs.len() as f64
        );
    }
}
