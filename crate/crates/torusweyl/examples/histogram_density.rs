//! Eigenvalue histogram of the lattice Hamiltonian against the
//! semiclassical density t_p/2πħ. Mid-spectrum the histogram tracks the
//! prediction closely; the logarithmic spike at E = 0 is the separatrix.
//!
//! Run with `cargo run --release --example histogram_density [N]`
//! (N = 1000 reproduces the shape at publication scale in ~1 s).

use torusweyl::bk;
use torusweyl::eigen;
use torusweyl::geometry::LatticeGeometry;
use torusweyl::semiclassics;
use torusweyl::stats::{self, HistogramSpec, Normalisation};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(400);
    let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
    let dec = eigen::eigendecompose(&bk::assemble_appendix_b(g), false).unwrap();
    let evs = &dec.record.eigenvalues;

    let (lo, hi) = bk::operator_bounds(g);
    let bins = HistogramSpec::default_bins(n);
    let spec = HistogramSpec::new(lo, hi, bins, Normalisation::Density).unwrap();

    println!("N = {n}, {bins} bins over [{lo:.3}, {hi:.3}]");
    println!("{:>12} {:>12} {:>16} {:>8}", "bin_center", "density", "semiclassical_d", "");
    let width = spec.bin_width();
    for (center, density) in stats::histogram(evs, &spec) {
        let d = semiclassics::local_density(g, center).unwrap_or(0.0);
        let bar = "#".repeat((density * width * 60.0 / (n as f64 / bins as f64)) as usize);
        println!("{center:>12.3} {density:>12.5} {d:>16.5}  {bar}");
    }
    let mid = 0.4 * hi;
    println!(
        "\nempirical vs predicted density near E = {mid:.2}: {:.4} vs {:.4}",
        stats::dk_estimate(evs, mid, 9).unwrap(),
        semiclassics::local_density(g, mid).unwrap()
    );
}
