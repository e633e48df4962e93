//! Torus phase-space geometry.
//!
//! A lattice geometry is the tuple (N, ℓx, ℓξ, ħ) subject to the
//! quantisation condition 2πħN = ℓξ·ℓx. The Hilbert space is ℂᴺ and
//! vectors are read as functions on the N lattice points
//! xₗ = l·ℓx/N with l in the canonical window −⌊N/2⌋ ≤ l < N−⌊N/2⌋.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Global relative tolerance for entrywise matrix comparisons and for the
/// quantisation-condition check.
pub const REL_TOL: f64 = 1e-12;

/// Torus phase-space geometry (N, ℓx, ℓξ, ħ) with 2πħN = ℓξ·ℓx.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeGeometry {
    n: usize,
    ell_x: f64,
    ell_xi: f64,
    hbar: f64,
}

impl LatticeGeometry {
    /// Builds a geometry from (N, ℓx, ħ), solving the quantisation
    /// condition for ℓξ = 2πħN/ℓx.
    pub fn new(n: usize, ell_x: f64, hbar: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("N must be a positive integer".into()));
        }
        if !(ell_x > 0.0) || !ell_x.is_finite() {
            return Err(Error::Domain(format!("ell_x must be positive, got {ell_x}")));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        let ell_xi = 2.0 * PI * hbar * n as f64 / ell_x;
        Ok(Self { n, ell_x, ell_xi, hbar })
    }

    /// The symmetric choice ℓx = ℓξ = √(2πħN).
    pub fn symmetric(n: usize, hbar: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("N must be a positive integer".into()));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        let ell = (2.0 * PI * hbar * n as f64).sqrt();
        Self::new(n, ell, hbar)
    }

    /// Rebuilds a geometry from all four stored parameters, re-checking the
    /// quantisation condition to [`REL_TOL`]. Used when deserialising.
    pub fn from_parts(n: usize, ell_x: f64, ell_xi: f64, hbar: f64) -> Result<Self> {
        let g = Self::new(n, ell_x, hbar)?;
        let target = 2.0 * PI * hbar * n as f64;
        if (ell_xi * ell_x - target).abs() > REL_TOL * target {
            return Err(Error::Domain(format!(
                "quantisation condition violated: ell_xi*ell_x = {} but 2*pi*hbar*N = {}",
                ell_xi * ell_x,
                target
            )));
        }
        Ok(Self { ell_xi, ..g })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell_x(&self) -> f64 {
        self.ell_x
    }

    pub fn ell_xi(&self) -> f64 {
        self.ell_xi
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// ℓx·ℓξ, equal to 2πħN by construction. For symmetric geometries this
    /// is the ℓ² scale carried by every matrix element.
    pub fn ell_sq(&self) -> f64 {
        self.ell_x * self.ell_xi
    }

    /// Whether ℓx = ℓξ within [`REL_TOL`].
    pub fn is_symmetric(&self) -> bool {
        (self.ell_x - self.ell_xi).abs() <= REL_TOL * self.ell_x.max(self.ell_xi)
    }

    /// Canonical signed index of memory slot `i`: l = i − ⌊N/2⌋.
    ///
    /// Storage is in ascending canonical order, so slot 0 holds l = −⌊N/2⌋
    /// and slot N−1 holds l = N−⌊N/2⌋−1.
    pub fn signed_index(&self, i: usize) -> i64 {
        debug_assert!(i < self.n);
        i as i64 - (self.n as i64) / 2
    }

    /// Memory slot of an arbitrary integer index, reduced modulo N into the
    /// canonical window.
    pub fn memory_index(&self, l: i64) -> usize {
        (l + (self.n as i64) / 2).rem_euclid(self.n as i64) as usize
    }

    /// The canonical window as a half-open range −⌊N/2⌋ ≤ l < N−⌊N/2⌋.
    pub fn canonical_window(&self) -> std::ops::Range<i64> {
        let lo = -((self.n as i64) / 2);
        lo..lo + self.n as i64
    }

    /// Lattice point xₗ = l·ℓx/N for canonical index l.
    pub fn lattice_point(&self, l: i64) -> f64 {
        l as f64 * self.ell_x / self.n as f64
    }

    /// Lattice spacing ℓx/N = 2πħ/ℓξ.
    pub fn spacing(&self) -> f64 {
        self.ell_x / self.n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_n1000_matches_sqrt_rule() {
        let g = LatticeGeometry::symmetric(1000, 1.0).unwrap();
        let ell = (2000.0 * PI).sqrt();
        assert!((g.ell_x() - ell).abs() < 1e-12 * ell);
        assert!((g.ell_xi() - ell).abs() < 1e-12 * ell);
        // 79.2665... as a spot value
        assert!((g.ell_xi() - 79.26654595212022).abs() < 1e-10);
    }

    #[test]
    fn identity_scale_case() {
        let g = LatticeGeometry::new(1, 2.0 * PI, 1.0).unwrap();
        assert!((g.ell_xi() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn n4_unit_length() {
        let g = LatticeGeometry::new(4, 1.0, 1.0).unwrap();
        assert!((g.ell_xi() - 8.0 * PI).abs() < 1e-12 * 8.0 * PI);
    }

    #[test]
    fn quantisation_condition_exact_by_construction() {
        for &(n, lx, hb) in &[(7usize, 0.3, 1.0), (64, 11.0, 0.5), (1000, 2.0, 3.0)] {
            let g = LatticeGeometry::new(n, lx, hb).unwrap();
            let target = 2.0 * PI * hb * n as f64;
            assert!((g.ell_x() * g.ell_xi() - target).abs() <= REL_TOL * target);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(LatticeGeometry::new(0, 1.0, 1.0).is_err());
        assert!(LatticeGeometry::new(4, 0.0, 1.0).is_err());
        assert!(LatticeGeometry::new(4, -1.0, 1.0).is_err());
        assert!(LatticeGeometry::new(4, 1.0, 0.0).is_err());
        assert!(LatticeGeometry::new(4, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn canonical_window_even_and_odd() {
        let g4 = LatticeGeometry::symmetric(4, 1.0).unwrap();
        let w: Vec<i64> = g4.canonical_window().collect();
        assert_eq!(w, vec![-2, -1, 0, 1]);
        let g5 = LatticeGeometry::symmetric(5, 1.0).unwrap();
        let w: Vec<i64> = g5.canonical_window().collect();
        assert_eq!(w, vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn index_maps_are_inverse() {
        let g = LatticeGeometry::symmetric(7, 1.0).unwrap();
        for i in 0..7 {
            assert_eq!(g.memory_index(g.signed_index(i)), i);
        }
        // arbitrary integers reduce modulo N
        assert_eq!(g.memory_index(3 + 7), g.memory_index(3));
        assert_eq!(g.memory_index(-3 - 14), g.memory_index(-3));
    }
}
