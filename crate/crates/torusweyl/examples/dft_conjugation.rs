//! The discrete Fourier transform swaps position and momentum: it maps the
//! quantised ξ² to the quantised x² when ℓx = ℓξ, squares to the parity
//! operator, and conjugates x-translations into ξ-translations.
//!
//! Run with `cargo run --release --example dft_conjugation`.

use num_complex::Complex64;
use torusweyl::bk;
use torusweyl::geometry::LatticeGeometry;
use torusweyl::operator::{dft_matrix, dft_matrix_inverse};
use torusweyl::state::StateVector;
use torusweyl::symbol::weyl_quantize;
use torusweyl::translation::{translation_matrix, TranslationIndex};

fn main() {
    println!("{:>5} {:>26} {:>26}", "N", "|F^-1 op(a) F - op(b)|", "|F^-1 T^(m,0) F - T^(0,m)|");
    for n in [2usize, 5, 8, 16, 32] {
        let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
        let f = dft_matrix(g);
        let finv = dft_matrix_inverse(g);

        let op_a = weyl_quantize(&bk::a_folded_symbol(g)).unwrap();
        let op_b = weyl_quantize(&bk::b_folded_symbol(g)).unwrap();
        let conj = finv.matrix() * op_a.matrix() * f.matrix();
        let mut diff_ab: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                diff_ab = diff_ab.max((conj[(i, j)] - op_b.matrix()[(i, j)]).norm());
            }
        }

        let mut diff_t: f64 = 0.0;
        for m in 0..n as i64 {
            let tx = translation_matrix(g, TranslationIndex::new(m, 0));
            let txi = translation_matrix(g, TranslationIndex::new(0, m));
            let c = finv.matrix() * tx.matrix() * f.matrix();
            for i in 0..n {
                for j in 0..n {
                    diff_t = diff_t.max((c[(i, j)] - txi.matrix()[(i, j)]).norm());
                }
            }
        }
        println!("{n:>5} {diff_ab:>26.3e} {diff_t:>26.3e}");
    }

    // F^2 acts as parity on any vector
    let g = LatticeGeometry::symmetric(7, 1.0).unwrap();
    let psi = StateVector::from_fn(g, |l| Complex64::new(l as f64, 0.5 * (l * l) as f64));
    let ff = psi.dft().dft();
    let worst = g
        .canonical_window()
        .map(|l| (ff.get(l) - psi.get(-l)).norm())
        .fold(0.0f64, f64::max);
    println!("\nparity check (F^2 psi)_l = psi_(-l) at N = 7: max deviation {worst:.3e}");
}
