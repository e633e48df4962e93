//! Dense operators on ℂᴺ with provenance metadata.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{LatticeGeometry, REL_TOL};
use crate::state::StateVector;

/// How a matrix was assembled. Stored in spectrum records and cache keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AssemblyRoute {
    /// Closed-form folded coefficients plus the exact diagonal.
    FoldedCoefficients,
    /// The finite translation-operator sum, valid for ℓx = ℓξ.
    FiniteSumForm,
    /// Directly written diagonal (multiplication operators).
    AnalyticDiagonal,
    /// Structural unitaries: translations and the Fourier matrix.
    Unitary,
}

impl AssemblyRoute {
    pub fn as_str(&self) -> &'static str {
        match self {
            AssemblyRoute::FoldedCoefficients => "appendixB",
            AssemblyRoute::FiniteSumForm => "finite",
            AssemblyRoute::AnalyticDiagonal => "diagonal",
            AssemblyRoute::Unitary => "unitary",
        }
    }
}

/// Dense N×N operator, rows and columns in ascending canonical index order.
#[derive(Debug, Clone)]
pub struct QuantumOperator {
    matrix: DMatrix<Complex64>,
    geometry: LatticeGeometry,
    route: AssemblyRoute,
    hermiticity_defect: f64,
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in i..n {
            defect = defect.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    defect
}

impl QuantumOperator {
    /// Wraps an assembled matrix, recording its hermiticity defect.
    pub fn new(matrix: DMatrix<Complex64>, geometry: LatticeGeometry, route: AssemblyRoute) -> Self {
        assert_eq!(matrix.nrows(), geometry.n());
        assert_eq!(matrix.ncols(), geometry.n());
        let hermiticity_defect = hermiticity_defect(&matrix);
        Self { matrix, geometry, route, hermiticity_defect }
    }

    /// Builds from a real matrix (zero imaginary part).
    pub fn from_real(matrix: DMatrix<f64>, geometry: LatticeGeometry, route: AssemblyRoute) -> Self {
        let complex = matrix.map(|x| Complex64::new(x, 0.0));
        Self::new(complex, geometry, route)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn geometry(&self) -> LatticeGeometry {
        self.geometry
    }

    pub fn route(&self) -> AssemblyRoute {
        self.route
    }

    /// Max entry of |A − A†| recorded at construction.
    pub fn hermiticity_defect(&self) -> f64 {
        self.hermiticity_defect
    }

    pub fn n(&self) -> usize {
        self.geometry.n()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// Largest imaginary part over all entries.
    pub fn max_imag(&self) -> f64 {
        self.matrix.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Extracts the real part, failing if any imaginary part exceeds
    /// `REL_TOL` times the largest entry. Realness is asserted, not assumed.
    pub fn to_real(&self) -> Result<DMatrix<f64>> {
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let imag = self.max_imag();
        if imag > REL_TOL * scale {
            return Err(Error::Precondition(format!(
                "matrix is not real: max imaginary part {imag:e} exceeds {:e}",
                REL_TOL * scale
            )));
        }
        Ok(self.matrix.map(|z| z.re))
    }

    /// Matrix–vector application, respecting the canonical index layout.
    pub fn apply(&self, psi: &StateVector) -> StateVector {
        let n = self.n();
        let mut out = vec![Complex64::ZERO; n];
        let entries = psi.entries();
        for i in 0..n {
            let mut acc = Complex64::ZERO;
            for j in 0..n {
                acc += self.matrix[(i, j)] * entries[j];
            }
            out[i] = acc;
        }
        StateVector::from_canonical(self.geometry, out)
    }

    /// A · (ℓ′/ℓ)² rescaling used by the scaling-covariance checks.
    pub fn scaled(&self, factor: f64, geometry: LatticeGeometry) -> Self {
        let matrix = self.matrix.map(|z| z * factor);
        Self::new(matrix, geometry, self.route)
    }
}

/// Unitary matrix of the discrete Fourier transform,
/// F_{k,l} = N^{−1/2} e^{−2πikl/N} on the canonical window.
pub fn dft_matrix(geometry: LatticeGeometry) -> QuantumOperator {
    let n = geometry.n();
    let nn = n as f64;
    let norm = 1.0 / nn.sqrt();
    let matrix = DMatrix::from_fn(n, n, |i, j| {
        let k = geometry.signed_index(i);
        let l = geometry.signed_index(j);
        Complex64::from_polar(norm, -2.0 * PI * (k * l) as f64 / nn)
    });
    QuantumOperator::new(matrix, geometry, AssemblyRoute::Unitary)
}

/// Inverse (adjoint) of [`dft_matrix`].
pub fn dft_matrix_inverse(geometry: LatticeGeometry) -> QuantumOperator {
    let f = dft_matrix(geometry);
    let adj = f.matrix().adjoint();
    QuantumOperator::new(adj, geometry, AssemblyRoute::Unitary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_matrix_matches_vector_dft() {
        let g = LatticeGeometry::symmetric(6, 1.0).unwrap();
        let f = dft_matrix(g);
        let psi = StateVector::from_fn(g, |l| Complex64::new(l as f64, (l * l) as f64 * 0.1));
        let via_matrix = f.apply(&psi);
        let direct = psi.dft();
        for l in g.canonical_window() {
            assert!((via_matrix.get(l) - direct.get(l)).norm() < 1e-12);
        }
    }

    #[test]
    fn dft_matrix_unitary() {
        for n in [1usize, 2, 5, 8] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            let f = dft_matrix(g);
            let prod = f.matrix().adjoint() * f.matrix();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { Complex64::ONE } else { Complex64::ZERO };
                    assert!((prod[(i, j)] - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn to_real_rejects_complex() {
        let g = LatticeGeometry::symmetric(2, 1.0).unwrap();
        let m = DMatrix::from_fn(2, 2, |i, j| {
            if i == j { Complex64::new(1.0, 0.5) } else { Complex64::ZERO }
        });
        let op = QuantumOperator::new(m, g, AssemblyRoute::AnalyticDiagonal);
        assert!(op.to_real().is_err());
    }
}
