//! The lattice Hamiltonian has two independent matrix assemblies: the
//! closed-form folded coefficients with an exact diagonal, and the finite
//! translation-operator sum. They must agree entrywise to rounding.
//!
//! Run with `cargo run --release --example assembly_routes`.

use torusweyl::bk;
use torusweyl::geometry::LatticeGeometry;

fn main() {
    println!("{:>5} {:>14} {:>24}", "N", "max |entry|", "max |route difference|");
    for n in [2usize, 3, 4, 5, 8, 16, 33, 64, 128] {
        let geometry = LatticeGeometry::symmetric(n, 1.0).unwrap();
        let closed = bk::assemble_appendix_b(geometry);
        let finite = bk::assemble_finite_sum(geometry).unwrap();
        let mut diff: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                diff = diff.max((closed.matrix()[(i, j)] - finite.matrix()[(i, j)]).norm());
            }
        }
        println!("{n:>5} {:>14.6e} {diff:>24.3e}", closed.max_abs());
    }
    println!("\nboth routes are real symmetric; the finite sum needs ell_x = ell_xi:");
    let asym = LatticeGeometry::new(8, 1.0, 1.0).unwrap();
    match bk::assemble_finite_sum(asym) {
        Err(e) => println!("  asymmetric geometry rejected as expected: {e}"),
        Ok(_) => println!("  unexpected acceptance"),
    }
}
