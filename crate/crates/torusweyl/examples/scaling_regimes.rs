//! Combined continuum/infinite-volume limits ℓξ = A·N^α, ℓx = B·N^{1−α}:
//! whether the spectrum of the quantised ξ² becomes dense depends on where
//! in the spectrum you look and on α.
//!
//! Run with `cargo run --release --example scaling_regimes`.

use torusweyl::stats::{regime_sweep, NuRule, ScalingRegime};

fn main() {
    let n_values = [64usize, 256, 1024, 4096];
    for (alpha, rule, label) in [
        (0.5, NuRule::Fixed(1), "alpha = 1/2, nu fixed (dense: spacing ~ 1/N)"),
        (0.5, NuRule::FixedSpectralRange, "alpha = 1/2, nu ~ N^(1/2) (fixed spectral range)"),
        (0.5, NuRule::SpectralEdge, "alpha = 1/2, nu ~ N (edge: constant spacing)"),
        (0.75, NuRule::SpectralEdge, "alpha = 3/4, nu ~ N (edge: spacing grows ~ N^(1/2))"),
        (0.25, NuRule::SpectralEdge, "alpha = 1/4, nu ~ N (edge: dense)"),
    ] {
        let regime = ScalingRegime::new(alpha, 1.0, 1.0).unwrap();
        let rows = regime_sweep(&regime, &n_values, rule).unwrap();
        println!("\n{label}");
        println!(
            "{:>6} {:>6} {:>14} {:>14} {:>14} {:>12}",
            "N", "nu", "E predicted", "E exact", "spacing", "class"
        );
        for r in rows {
            println!(
                "{:>6} {:>6} {:>14.6e} {:>14.6e} {:>14.6e} {:>12?}",
                r.n, r.nu, r.eigenvalue_predicted, r.eigenvalue_exact, r.spacing_exact, r.density_class
            );
        }
    }
}
