//! For ℓx = ℓξ the spectrum of the lattice Hamiltonian is symmetric about
//! zero (conjugation by the Fourier matrix flips its sign), and odd N
//! forces an eigenvalue pinned at zero.
//!
//! Run with `cargo run --release --example spectral_symmetry [N]`.

use torusweyl::bk;
use torusweyl::eigen;
use torusweyl::geometry::LatticeGeometry;
use torusweyl::stats;

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(101);
    let geometry = LatticeGeometry::symmetric(n, 1.0).unwrap();
    let dec = eigen::eigendecompose(&bk::assemble_appendix_b(geometry), false).unwrap();
    let evs = &dec.record.eigenvalues;

    let defect = stats::symmetry_defect(geometry, evs).unwrap();
    let scale = evs.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    println!("N = {n}: {} eigenvalues in [{:.6}, {:.6}]", evs.len(), evs[0], evs[n - 1]);
    println!("symmetry defect max|E_i + E_(N+1-i)| / max|E| = {defect:.3e}");

    if n % 2 == 1 {
        let smallest = evs.iter().fold(f64::INFINITY, |a, &x| a.min(x.abs()));
        println!("odd N: smallest |E| = {smallest:.3e} (relative {:.3e})", smallest / scale);
    }

    println!("\nfirst few symmetric pairs:");
    for i in 0..5.min(n / 2) {
        println!(
            "  E_{i} = {:>18.12}   E_{} = {:>18.12}   sum = {:+.3e}",
            evs[i],
            n - 1 - i,
            evs[n - 1 - i],
            evs[i] + evs[n - 1 - i]
        );
    }
}
