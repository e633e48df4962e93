//! Classical quantities of the flow: primitive-orbit action S_p, period
//! t_p = dS_p/dE (checked by finite differences), spectral density
//! d(E) = t_p/2πħ, and the energy-linked length choice under which the
//! period collapses to 2·log(E/2π).
//!
//! Run with `cargo run --release --example semiclassical_profile`.

use std::f64::consts::PI;
use torusweyl::geometry::LatticeGeometry;
use torusweyl::semiclassics::{self, SemiclassicalProfile};

fn main() {
    let g = LatticeGeometry::symmetric(1000, 1.0).unwrap();
    let top = g.ell_xi() * g.ell_xi() / 8.0;
    println!("geometry: N = 1000, ell = {:.4}, classical range ({:.4}, {:.4}]", g.ell_xi(), -top, top);
    println!("\n{:>12} {:>16} {:>12} {:>12} {:>12}", "E", "S_p", "t_p", "dS/dE (FD)", "d(E)");
    for frac in [0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.95, 1.0] {
        let e = top * frac;
        let s = semiclassics::action(g, e).unwrap();
        let t = semiclassics::period(g, e).unwrap();
        let h = 1e-6 * e;
        let fd = (semiclassics::action(g, e + h).unwrap()
            - semiclassics::action(g, e - h).unwrap())
            / (2.0 * h);
        let d = semiclassics::local_density(g, e).unwrap();
        println!("{e:>12.4} {s:>16.6} {t:>12.6} {fd:>12.6} {d:>12.6}");
    }

    println!("\nnegative energies mirror the positive branch with x and xi swapped:");
    let e = 0.3 * top;
    println!(
        "  S_p(-E) = {:.6} vs S_p(+E) = {:.6}",
        semiclassics::action(g, -e).unwrap(),
        semiclassics::action(g, e).unwrap()
    );

    let linked = SemiclassicalProfile::for_bk_link();
    println!("\nlength-energy link ell_xi = (E+2pi)/sqrt(pi):");
    println!("{:>12} {:>12} {:>14} {:>14}", "E", "t_p", "2 log(E/2pi)", "mean density");
    for e in [2.0 * PI, 20.0, 134.2131, 1000.0] {
        let t = linked.period(e).unwrap();
        println!(
            "{e:>12.4} {t:>12.6} {:>14.6} {:>14.6}",
            2.0 * (e / (2.0 * PI)).ln(),
            linked.mean_density(e).unwrap()
        );
    }
}
