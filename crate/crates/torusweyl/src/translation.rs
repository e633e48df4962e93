//! Phase-space translation operators T^{m,n} on ℂᴺ.
//!
//! T^{m,n} = e^{iπnm/N} T^{m,0} T^{0,n} with matrix elements
//! (T^{m,n})_{k,l} = e^{−iπnm/N} e^{−2πikn/N} δ_{k+m,l}, indices mod N.
//! They obey the sign-twisted periodicity
//! T^{m+μN,n+νN} = (−1)^{mν+nμ+μνN} T^{m,n}.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::geometry::LatticeGeometry;
use crate::operator::{AssemblyRoute, QuantumOperator};

/// Integer translation steps (m in x, n in ξ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TranslationIndex {
    pub m: i64,
    pub n: i64,
}

impl TranslationIndex {
    pub fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }
}

/// Dense unitary matrix of T^{m,n}.
pub fn translation_matrix(geometry: LatticeGeometry, idx: TranslationIndex) -> QuantumOperator {
    let n_dim = geometry.n();
    let nn = n_dim as f64;
    let mut matrix = DMatrix::zeros(n_dim, n_dim);
    // phase split keeps the exponent arguments small; both factors are
    // periodic in the row index modulo N
    let comp_phase = -PI * (idx.n as f64) * (idx.m as f64) / nn;
    for i in 0..n_dim {
        let k = geometry.signed_index(i);
        let j = geometry.memory_index(k + idx.m);
        let row_phase = -2.0 * PI * (k * idx.n) as f64 / nn;
        matrix[(i, j)] = Complex64::from_polar(1.0, comp_phase + row_phase);
    }
    QuantumOperator::new(matrix, geometry, AssemblyRoute::Unitary)
}

/// The sign (−1)^{mν+nμ+μνN} picked up when shifting (m,n) by (μN, νN).
pub fn periodicity_sign(n_dim: usize, m: i64, n: i64, mu: i64, nu: i64) -> f64 {
    let exponent = m * nu + n * mu + mu * nu * n_dim as i64;
    if exponent.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
}
