//! Classical quantities of the torus Hamiltonian flow: energy-surface
//! connectivity, primitive-orbit action and period, the leading
//! semiclassical spectral density, and the length–energy link that turns it
//! into the logarithmic mean density.
//!
//! On the positive branch (connected surface, 0 < E ≤ ℓξ²/8):
//!
//! * S_p(E) = 4E·arsinh√(ℓξ²/8E − 1) − (ℓξ/2)√(ℓξ² − 8E),
//! * t_p(E) = dS_p/dE = 4·arsinh√(ℓξ²/8E − 1),
//! * d(E) = t_p/(2πħ).
//!
//! Negative energies reduce to the positive branch with x and ξ swapped.
//! With the link ℓξ = (E+2π)/√π (ħ = 1) the period collapses to
//! t_p = 2·log(E/2π) and the mean density to d̄(E) = log(E/2π)/π.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::LatticeGeometry;

/// Relative energy floor below which the logarithmic divergence of the
/// period is reported as +∞ rather than a huge float.
pub const DEFAULT_ENERGY_FLOOR: f64 = 1e-8;

/// Connectivity of the energy surface Σ_E inside the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    TwoComponents,
    Empty,
}

/// Classification of Σ_E together with the number of primitive orbits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySurfaceClass {
    pub energy: f64,
    pub connectivity: Connectivity,
    /// 1 for a connected surface, 2 for two components, 0 when empty.
    pub orbit_count: usize,
}

/// Classifies Σ_E. The surface is empty outside [−ℓx²/8, ℓξ²/8] and splits
/// into two components exactly when the hyperbola exits through the x-faces:
/// ℓξ > ℓx with 0 < E < (ℓξ²−ℓx²)/8, or mirrored for negative E.
pub fn classify_surface(geometry: LatticeGeometry, energy: f64) -> EnergySurfaceClass {
    let lx2 = geometry.ell_x() * geometry.ell_x();
    let lxi2 = geometry.ell_xi() * geometry.ell_xi();
    let split = (lxi2 - lx2) / 8.0;
    // boundary slack so energies formed through equivalent expressions do
    // not fall out of the closed interval by a rounding ulp
    let slack = crate::geometry::REL_TOL * lx2.max(lxi2) / 8.0;
    let connectivity = if energy < -lx2 / 8.0 - slack || energy > lxi2 / 8.0 + slack {
        Connectivity::Empty
    } else if (lxi2 > lx2 && energy > 0.0 && energy < split)
        || (lx2 > lxi2 && energy < 0.0 && energy > split)
    {
        Connectivity::TwoComponents
    } else {
        Connectivity::Connected
    };
    let orbit_count = match connectivity {
        Connectivity::Connected => 1,
        Connectivity::TwoComponents => 2,
        Connectivity::Empty => 0,
    };
    EnergySurfaceClass { energy, connectivity, orbit_count }
}

fn swapped(geometry: LatticeGeometry) -> LatticeGeometry {
    LatticeGeometry::from_parts(
        geometry.n(),
        geometry.ell_xi(),
        geometry.ell_x(),
        geometry.hbar(),
    )
    .expect("swapping lengths preserves the quantisation condition")
}

/// Checks the positive-branch preconditions and returns the ℓξ to use.
fn positive_branch(geometry: LatticeGeometry, energy: f64) -> Result<f64> {
    let lxi = geometry.ell_xi();
    if !(energy > 0.0) {
        return Err(Error::Domain(format!(
            "energy {energy} outside the positive branch (0, ell_xi^2/8]"
        )));
    }
    let bound = lxi * lxi / 8.0;
    if energy > bound * (1.0 + crate::geometry::REL_TOL) {
        return Err(Error::Domain(format!(
            "energy {energy} above the spectral bound {bound}"
        )));
    }
    match classify_surface(geometry, energy).connectivity {
        Connectivity::Connected => Ok(lxi),
        Connectivity::TwoComponents => Err(Error::Precondition(format!(
            "energy surface at E = {energy} has two components; the primitive-orbit \
             formulas require a connected surface"
        ))),
        Connectivity::Empty => unreachable!("range already checked"),
    }
}

/// arsinh argument √((ℓξ² − 8E)/8E); the numerator is formed directly to
/// avoid amplifying the cancellation near the top of the branch.
fn arsinh_argument(lxi: f64, energy: f64) -> f64 {
    let num = (lxi * lxi - 8.0 * energy).max(0.0);
    (num / (8.0 * energy)).sqrt()
}

/// Primitive-orbit action S_p(E) on a connected surface; the negative
/// branch swaps x and ξ and evaluates at −E.
pub fn action(geometry: LatticeGeometry, energy: f64) -> Result<f64> {
    if energy < 0.0 {
        return action(swapped(geometry), -energy);
    }
    let lxi = positive_branch(geometry, energy)?;
    let w = arsinh_argument(lxi, energy);
    let root = (lxi * lxi - 8.0 * energy).max(0.0).sqrt();
    Ok(4.0 * energy * w.asinh() - 0.5 * lxi * root)
}

/// Primitive-orbit period t_p(E) = dS_p/dE = 4·arsinh√(ℓξ²/8E − 1).
///
/// Below `floor`·ℓξ² the logarithmic divergence at the separatrix is
/// reported as +∞.
pub fn period_with_floor(geometry: LatticeGeometry, energy: f64, floor: f64) -> Result<f64> {
    if energy < 0.0 {
        return period_with_floor(swapped(geometry), -energy, floor);
    }
    if energy == 0.0 {
        return Err(Error::Domain(
            "the separatrix E = 0 carries no periodic orbit".into(),
        ));
    }
    let lxi = positive_branch(geometry, energy)?;
    if energy < floor * lxi * lxi {
        return Ok(f64::INFINITY);
    }
    Ok(4.0 * arsinh_argument(lxi, energy).asinh())
}

pub fn period(geometry: LatticeGeometry, energy: f64) -> Result<f64> {
    period_with_floor(geometry, energy, DEFAULT_ENERGY_FLOOR)
}

/// Leading spectral density d(E) = t_p/(2πħ), doubled when Σ_E has two
/// components (the Liouville volume is then the sum over both orbits).
pub fn local_density(geometry: LatticeGeometry, energy: f64) -> Result<f64> {
    local_density_with_floor(geometry, energy, DEFAULT_ENERGY_FLOOR)
}

pub fn local_density_with_floor(
    geometry: LatticeGeometry,
    energy: f64,
    floor: f64,
) -> Result<f64> {
    if energy < 0.0 {
        return local_density_with_floor(swapped(geometry), -energy, floor);
    }
    if energy == 0.0 {
        return Err(Error::Domain(
            "the separatrix E = 0 carries no periodic orbit".into(),
        ));
    }
    let lxi = geometry.ell_xi();
    let bound = lxi * lxi / 8.0;
    if energy > bound * (1.0 + crate::geometry::REL_TOL) {
        return Err(Error::Domain(format!(
            "energy {energy} above the spectral bound {bound}"
        )));
    }
    let class = classify_surface(geometry, energy);
    if energy < floor * lxi * lxi {
        return Ok(f64::INFINITY);
    }
    let t = 4.0 * arsinh_argument(lxi, energy).asinh();
    let d = t / (2.0 * PI * geometry.hbar());
    Ok(match class.connectivity {
        Connectivity::TwoComponents => 2.0 * d,
        _ => d,
    })
}

/// Local counting estimate N(E;r) = (r/π)·t_p for the window |Eₙ−E| ≤ rħ.
pub fn counting_estimate(geometry: LatticeGeometry, energy: f64, r: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::Domain(format!("window radius must be >= 0, got {r}")));
    }
    let t = period(geometry, energy)?;
    Ok(r / PI * t)
}

/// The length–energy link ℓξ(E) = (E+2π)/√π, stated in ħ = 1 units.
/// Rejects ħ ≠ 1 and energies at or below −2π (non-positive length).
pub fn bk_link_length(energy: f64, hbar: f64) -> Result<f64> {
    if (hbar - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "the length-energy link is defined in hbar = 1 units, got hbar = {hbar}"
        )));
    }
    let ell = (energy + 2.0 * PI) / PI.sqrt();
    if !(ell > 0.0) {
        return Err(Error::Domain(format!(
            "energy {energy} gives non-positive length {ell}"
        )));
    }
    Ok(ell)
}

/// Inverse of the link under ℓξ = √(2πN): the matching energy
/// E(N) = π√(2N) − 2π.
pub fn energy_of_n(n: usize) -> f64 {
    PI * (2.0 * n as f64).sqrt() - 2.0 * PI
}

/// Mean spectral density under the link, d̄(E) = log(E/2π)/π for E ≥ 2π.
pub fn mean_density(energy: f64) -> Result<f64> {
    if energy < 2.0 * PI {
        return Err(Error::Domain(format!(
            "mean density is defined for E >= 2*pi, got {energy}"
        )));
    }
    Ok((energy / (2.0 * PI)).ln() / PI)
}

/// Which length scales a profile evaluates against.
#[derive(Debug, Clone, Copy)]
pub enum ProfileMode {
    /// Fixed lattice geometry.
    Geometry(LatticeGeometry),
    /// Length tied to energy through ℓξ(E) = (E+2π)/√π at ħ = 1.
    BkLink,
}

/// Bundle of the energy-dependent classical quantities.
#[derive(Debug, Clone, Copy)]
pub struct SemiclassicalProfile {
    mode: ProfileMode,
    energy_floor: f64,
}

impl SemiclassicalProfile {
    pub fn for_geometry(geometry: LatticeGeometry) -> Self {
        Self { mode: ProfileMode::Geometry(geometry), energy_floor: DEFAULT_ENERGY_FLOOR }
    }

    pub fn for_bk_link() -> Self {
        Self { mode: ProfileMode::BkLink, energy_floor: DEFAULT_ENERGY_FLOOR }
    }

    /// Overrides the relative floor below which the period diverges.
    pub fn with_energy_floor(mut self, floor: f64) -> Self {
        self.energy_floor = floor;
        self
    }

    fn geometry_at(&self, energy: f64) -> Result<LatticeGeometry> {
        match self.mode {
            ProfileMode::Geometry(g) => Ok(g),
            ProfileMode::BkLink => {
                let ell_xi = bk_link_length(energy, 1.0)?;
                // N enters none of the classical quantities; pick the
                // smallest geometry carrying these lengths
                LatticeGeometry::from_parts(1, 2.0 * PI / ell_xi, ell_xi, 1.0)
            }
        }
    }

    /// In linked mode the arsinh argument factorises exactly:
    /// √(ℓξ²/8E − 1) = (E−2π)/√(8πE), so the boundary E = 2π is computed
    /// without cancellation. The link is restricted to E ≥ 2π, where the
    /// logarithmic forms t_p = 2·log(E/2π) are valid.
    fn linked_argument(energy: f64) -> Result<f64> {
        if energy < 2.0 * PI {
            return Err(Error::Domain(format!(
                "the linked profile is defined for E >= 2*pi, got {energy}"
            )));
        }
        Ok((energy - 2.0 * PI) / (8.0 * PI * energy).sqrt())
    }

    pub fn classify(&self, energy: f64) -> Result<EnergySurfaceClass> {
        Ok(classify_surface(self.geometry_at(energy)?, energy))
    }

    pub fn action(&self, energy: f64) -> Result<f64> {
        match self.mode {
            ProfileMode::Geometry(g) => action(g, energy),
            ProfileMode::BkLink => {
                let u = Self::linked_argument(energy)?;
                // (ell_xi/2)*sqrt(ell_xi^2 - 8E) = (E+2pi)(E-2pi)/(2pi)
                Ok(4.0 * energy * u.asinh()
                    - (energy + 2.0 * PI) * (energy - 2.0 * PI) / (2.0 * PI))
            }
        }
    }

    pub fn period(&self, energy: f64) -> Result<f64> {
        match self.mode {
            ProfileMode::Geometry(g) => period_with_floor(g, energy, self.energy_floor),
            ProfileMode::BkLink => Ok(4.0 * Self::linked_argument(energy)?.asinh()),
        }
    }

    pub fn density(&self, energy: f64) -> Result<f64> {
        match self.mode {
            ProfileMode::Geometry(g) => {
                local_density_with_floor(g, energy, self.energy_floor)
            }
            ProfileMode::BkLink => Ok(self.period(energy)? / (2.0 * PI)),
        }
    }

    /// d̄(E); only meaningful in linked mode, where it coincides with
    /// [`Self::density`] on E ≥ 2π.
    pub fn mean_density(&self, energy: f64) -> Result<f64> {
        match self.mode {
            ProfileMode::BkLink => mean_density(energy),
            ProfileMode::Geometry(_) => Err(Error::Precondition(
                "mean density requires the length-energy link".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn asym(lx: f64, lxi_over_lx: f64) -> LatticeGeometry {
        // build a geometry with prescribed aspect ratio by tuning hbar
        let n = 4usize;
        let lxi = lx * lxi_over_lx;
        let hbar = lx * lxi / (2.0 * PI * n as f64);
        LatticeGeometry::from_parts(n, lx, lxi, hbar).unwrap()
    }

    #[test]
    fn classification_examples() {
        let sym = LatticeGeometry::symmetric(8, 1.0).unwrap();
        let hi = sym.ell_xi().powi(2) / 8.0;
        for e in [-hi * 0.99, -0.3 * hi, 0.0, 0.5 * hi, hi] {
            assert_eq!(classify_surface(sym, e).connectivity, Connectivity::Connected);
        }
        assert_eq!(classify_surface(sym, hi * 1.01).connectivity, Connectivity::Empty);
        assert_eq!(classify_surface(sym, -hi * 1.01).connectivity, Connectivity::Empty);

        // ell_xi = 2, ell_x = 1, E = 0.3: two components since 0 < 0.3 < 3/8
        let g = asym(1.0, 2.0);
        let class = classify_surface(g, 0.3);
        assert_eq!(class.connectivity, Connectivity::TwoComponents);
        assert_eq!(class.orbit_count, 2);
        // at negative energies that geometry stays connected
        assert_eq!(classify_surface(g, -0.05).connectivity, Connectivity::Connected);
        // mirrored geometry splits at negative energies; its positive range
        // only reaches ell_xi^2/8 = 1/8
        let gm = asym(2.0, 0.5);
        assert_eq!(classify_surface(gm, -0.3).connectivity, Connectivity::TwoComponents);
        assert_eq!(classify_surface(gm, 0.1).connectivity, Connectivity::Connected);
        assert_eq!(classify_surface(gm, 0.3).connectivity, Connectivity::Empty);
    }

    #[test]
    fn action_boundary_and_midpoint() {
        let g = LatticeGeometry::symmetric(16, 1.0).unwrap();
        let lxi = g.ell_xi();
        let top = lxi * lxi / 8.0;
        assert!(action(g, top).unwrap().abs() < 1e-12 * lxi * lxi);
        // E = lxi^2/16: S = (lxi^2/4)(arsinh(1) - sqrt(2))
        let want = lxi * lxi / 4.0 * ((1.0f64).asinh() - 2.0f64.sqrt());
        let got = action(g, top / 2.0).unwrap();
        assert!((got - want).abs() < 1e-12 * lxi * lxi, "{got} vs {want}");
    }

    #[test]
    fn period_values() {
        let g = LatticeGeometry::symmetric(16, 1.0).unwrap();
        let lxi = g.ell_xi();
        let top = lxi * lxi / 8.0;
        assert!(period(g, top).unwrap().abs() < 1e-12);
        let want = 4.0 * (1.0 + 2.0f64.sqrt()).ln();
        assert!((period(g, top / 2.0).unwrap() - want).abs() < 1e-12);
        // divergence flag near the separatrix
        assert_eq!(period(g, 1e-12 * lxi * lxi).unwrap(), f64::INFINITY);
        assert!(period(g, 0.0).is_err());
        assert!(period(g, top * 1.5).is_err());
    }

    #[test]
    fn period_is_action_derivative() {
        let g = LatticeGeometry::symmetric(64, 1.0).unwrap();
        let lxi2 = g.ell_xi() * g.ell_xi();
        let lo = (lxi2 / 800.0).ln();
        let hi = (lxi2 / 8.0 * (1.0 - 1e-3)).ln();
        for i in 0..40 {
            let e = (lo + (hi - lo) * i as f64 / 39.0).exp();
            let h = 1e-6 * e;
            let fd = (action(g, e + h).unwrap() - action(g, e - h).unwrap()) / (2.0 * h);
            let t = period(g, e).unwrap();
            assert!(
                (fd - t).abs() <= 1e-6 * t.abs(),
                "E={e}: fd {fd} vs t_p {t}"
            );
        }
    }

    #[test]
    fn period_monotone_decreasing() {
        let g = LatticeGeometry::symmetric(32, 1.0).unwrap();
        let top = g.ell_xi().powi(2) / 8.0;
        let mut last = f64::INFINITY;
        for i in 1..=200 {
            let e = top * (i as f64 / 200.0);
            let t = period(g, e).unwrap();
            assert!(t < last);
            last = t;
        }
    }

    #[test]
    fn mirror_rule() {
        let g = asym(1.5, 2.0);
        let gswap = asym(3.0, 0.5);
        for e in [0.05, 0.2, 0.63] {
            // connected range on the negative side of g is the mirror of
            // the positive side of gswap
            let a_neg = action(g, -e);
            let a_pos = action(gswap, e);
            match (a_neg, a_pos) {
                (Ok(x), Ok(y)) => assert!((x - y).abs() < 1e-12 * (1.0 + y.abs())),
                (Err(_), Err(_)) => {}
                other => panic!("mirror mismatch at E={e}: {other:?}"),
            }
        }
    }

    #[test]
    fn two_component_density_doubles() {
        let g = asym(1.0, 2.0);
        // E = 0.3 lies in the two-component range (0, 3/8)
        let lxi = g.ell_xi();
        let base = 4.0 * ((lxi * lxi / (8.0 * 0.3) - 1.0f64).sqrt()).asinh()
            / (2.0 * PI * g.hbar());
        let d = local_density(g, 0.3).unwrap();
        assert!((d - 2.0 * base).abs() < 1e-12 * base);
        // but action/period refuse the disconnected surface
        assert!(action(g, 0.3).is_err());
        assert!(period(g, 0.3).is_err());
    }

    #[test]
    fn density_equals_period_over_two_pi_hbar() {
        let g = LatticeGeometry::symmetric(100, 0.7).unwrap();
        let top = g.ell_xi().powi(2) / 8.0;
        for frac in [0.1, 0.37, 0.8, 1.0] {
            let e = top * frac;
            let d = local_density(g, e).unwrap();
            let t = period(g, e).unwrap();
            assert!((d - t / (2.0 * PI * g.hbar())).abs() <= 1e-14 * (1.0 + d.abs()));
        }
    }

    #[test]
    fn n1000_density_spot_value() {
        let g = LatticeGeometry::symmetric(1000, 1.0).unwrap();
        let d = local_density(g, 100.0).unwrap();
        let want = 2.0 / PI * ((2000.0 * PI / 800.0 - 1.0f64).sqrt()).asinh();
        assert!((d - want).abs() < 1e-12);
        // direct evaluation of the arsinh argument at this point
        assert!(((2000.0 * PI / 800.0 - 1.0f64).sqrt() - 2.6180110072294354).abs() < 1e-12);
    }

    #[test]
    fn bk_link_values() {
        assert!((bk_link_length(2.0 * PI, 1.0).unwrap() - 4.0 * PI.sqrt()).abs() < 1e-12);
        assert!(bk_link_length(1.0, 0.5).is_err());
        assert!(bk_link_length(-2.0 * PI, 1.0).is_err());
        // E(N) closes the loop with ell_xi = sqrt(2 pi N)
        for n in [500usize, 1000, 2000] {
            let e = energy_of_n(n);
            let ell = bk_link_length(e, 1.0).unwrap();
            let want = (2.0 * PI * n as f64).sqrt();
            assert!((ell - want).abs() < 1e-9 * want);
        }
        // pi*sqrt(2000) - 2*pi evaluated directly
        assert!((energy_of_n(1000) - 134.2131085).abs() < 1e-6);
    }

    #[test]
    fn mean_density_values() {
        assert!(mean_density(2.0 * PI).unwrap().abs() < 1e-15);
        let e = 2.0 * PI * std::f64::consts::E;
        assert!((mean_density(e).unwrap() - 1.0 / PI).abs() < 1e-14);
        assert!(mean_density(6.0).is_err());
    }

    #[test]
    fn arsinh_log_identity_under_link() {
        // 4 arsinh((E-2pi)/sqrt(8 pi E)) = 2 log(E/2pi) on E >= 2 pi
        for i in 0..200 {
            let e = 2.0 * PI * (1.0 + i as f64 * 8.0).min(1e4);
            let lhs = 4.0 * ((e - 2.0 * PI) / (8.0 * PI * e).sqrt()).asinh();
            let rhs = 2.0 * (e / (2.0 * PI)).ln();
            assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn linked_profile_consistency() {
        let profile = SemiclassicalProfile::for_bk_link();
        for e in [2.0 * PI, 30.0, 134.19, 900.0] {
            let d = profile.density(e).unwrap();
            let dbar = profile.mean_density(e).unwrap();
            assert!((d - dbar).abs() <= 1e-10 * (1.0 + dbar.abs()), "E={e}");
            // t_p under the link is 2 log(E/2pi)
            let t = profile.period(e).unwrap();
            assert!((t - 2.0 * (e / (2.0 * PI)).ln()).abs() <= 1e-10 * (1.0 + t.abs()));
        }
        // S(E=2pi) = 0: both closed-form terms vanish
        assert!(profile.action(2.0 * PI).unwrap().abs() < 1e-10);
    }

    #[test]
    fn counting_estimate_values() {
        let g = LatticeGeometry::symmetric(16, 1.0).unwrap();
        let top = g.ell_xi().powi(2) / 8.0;
        assert_eq!(counting_estimate(g, top / 2.0, 0.0).unwrap(), 0.0);
        let want = 4.0 * (1.0 + 2.0f64.sqrt()).ln();
        assert!((counting_estimate(g, top / 2.0, PI).unwrap() - want).abs() < 1e-12);
        assert!(counting_estimate(g, top / 2.0, -1.0).is_err());
    }
}
