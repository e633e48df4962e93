//! State vectors on the periodic lattice and the discrete Fourier transform.
//!
//! Entries are indexed by the canonical window −⌊N/2⌋ ≤ l < N−⌊N/2⌋ with the
//! periodic convention ψ_{l+N} = ψ_l; all index arithmetic is modulo N.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::geometry::LatticeGeometry;

/// A vector in ℂᴺ stored in ascending canonical index order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    geometry: LatticeGeometry,
    entries: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from entries listed in ascending canonical order
    /// (slot 0 is l = −⌊N/2⌋).
    pub fn from_canonical(geometry: LatticeGeometry, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), geometry.n(), "entry count must equal N");
        Self { geometry, entries }
    }

    /// Builds a state by evaluating `f` at every canonical index.
    pub fn from_fn(geometry: LatticeGeometry, mut f: impl FnMut(i64) -> Complex64) -> Self {
        let entries = geometry.canonical_window().map(&mut f).collect();
        Self { geometry, entries }
    }

    /// Normalised plane wave ψ^(ν)_m = e^{2πiνm/N}/√N, zero phase at m = 0.
    pub fn plane_wave(geometry: LatticeGeometry, nu: i64) -> Self {
        let n = geometry.n() as f64;
        let norm = 1.0 / n.sqrt();
        Self::from_fn(geometry, |m| {
            Complex64::from_polar(norm, 2.0 * PI * (nu * m) as f64 / n)
        })
    }

    /// Position basis vector δ_l.
    pub fn position_basis(geometry: LatticeGeometry, l: i64) -> Self {
        let slot = geometry.memory_index(l);
        let mut entries = vec![Complex64::ZERO; geometry.n()];
        entries[slot] = Complex64::ONE;
        Self { geometry, entries }
    }

    pub fn geometry(&self) -> LatticeGeometry {
        self.geometry
    }

    /// Entry at an arbitrary integer index (periodic).
    pub fn get(&self, l: i64) -> Complex64 {
        self.entries[self.geometry.memory_index(l)]
    }

    /// Entries in ascending canonical order.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self, other⟩ with the convention of conjugating `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// x-translation (T^{m,0}ψ)_l = ψ_{l+m}.
    pub fn translate_x(&self, m: i64) -> Self {
        Self::from_fn(self.geometry, |l| self.get(l + m))
    }

    /// ξ-translation (T^{0,n}ψ)_l = e^{−2πi l n/N} ψ_l.
    pub fn translate_xi(&self, n: i64) -> Self {
        let nn = self.geometry.n() as f64;
        Self::from_fn(self.geometry, |l| {
            Complex64::from_polar(1.0, -2.0 * PI * (l * n) as f64 / nn) * self.get(l)
        })
    }

    /// Unitary discrete Fourier transform (Fψ)_k = N^{−1/2} Σ_l e^{−2πikl/N} ψ_l.
    pub fn dft(&self) -> Self {
        self.fourier(-1.0)
    }

    /// Inverse transform, (F⁻¹ψ)_k = N^{−1/2} Σ_l e^{+2πikl/N} ψ_l.
    pub fn idft(&self) -> Self {
        self.fourier(1.0)
    }

    fn fourier(&self, sign: f64) -> Self {
        let n = self.geometry.n() as f64;
        let norm = 1.0 / n.sqrt();
        Self::from_fn(self.geometry, |k| {
            let mut acc = Complex64::ZERO;
            for l in self.geometry.canonical_window() {
                let phase = Complex64::from_polar(1.0, sign * 2.0 * PI * (k * l) as f64 / n);
                acc += phase * self.get(l);
            }
            norm * acc
        })
    }
}
