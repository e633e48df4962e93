//! The strongest oracle in the crate: the quantised momentum symbol
//! a(ξ) = ξ² is diagonalised numerically and compared against its exact
//! plane-wave spectrum E_ν = (νℓξ/N)².
//!
//! Run with `cargo run --release --example exact_spectrum [N]`.

use torusweyl::bk;
use torusweyl::eigen;
use torusweyl::geometry::LatticeGeometry;
use torusweyl::symbol::weyl_quantize;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let geometry = LatticeGeometry::symmetric(n, 1.0).expect("valid geometry");
    println!(
        "N = {n}, ell_x = ell_xi = {:.6}, hbar = 1\n",
        geometry.ell_xi()
    );

    let op = weyl_quantize(&bk::a_folded_symbol(geometry)).expect("assembly");
    let dec = eigen::eigendecompose(&op, false).expect("decomposition");
    let exact = bk::analytic_spectrum_a(geometry);

    println!("{:>4} {:>6} {:>22} {:>22} {:>12}", "i", "nu", "computed", "exact", "rel err");
    let scale = *exact.eigenvalues().last().unwrap();
    let mut worst: f64 = 0.0;
    for (i, (got, (want, nu))) in dec
        .record
        .eigenvalues
        .iter()
        .zip(exact.eigenvalues().iter().zip(exact.labels()))
        .enumerate()
    {
        let denom = if *want == 0.0 { scale } else { *want };
        let rel = (got - want).abs() / denom;
        worst = worst.max(rel);
        println!("{i:>4} {nu:>6} {got:>22.15e} {want:>22.15e} {rel:>12.2e}");
    }
    println!("\nworst relative error: {worst:.3e}");
    println!("QL iterations: {}", dec.record.solver.iterations);
}
