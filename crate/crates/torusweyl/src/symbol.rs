//! Phase-space symbols as finite Fourier coefficient sets, symbol folding,
//! and generic Weyl quantisation.
//!
//! A symbol f(x,ξ) = Σ f_{mn} e^{2πi(mξ/ℓξ − nx/ℓx)} is stored as a sparse
//! map (m,n) → f_{mn}. Symbols built by truncating an infinite series carry
//! the ℓ¹ mass of the dropped coefficients as a certified tail bound; since
//! every T^{m,n} has unit-modulus entries, that bound controls the entrywise
//! error of the quantised operator.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::LatticeGeometry;
use crate::operator::{AssemblyRoute, QuantumOperator};
use crate::translation::periodicity_sign;

/// Sparse set of Fourier coefficients of a periodic phase-space function.
#[derive(Debug, Clone)]
pub struct TorusSymbol {
    coefficients: BTreeMap<(i64, i64), Complex64>,
    geometry: LatticeGeometry,
    label: String,
    tail_bound: f64,
}

impl TorusSymbol {
    pub fn new(geometry: LatticeGeometry, label: impl Into<String>) -> Self {
        Self {
            coefficients: BTreeMap::new(),
            geometry,
            label: label.into(),
            tail_bound: 0.0,
        }
    }

    /// The constant symbol f(x,ξ) = c.
    pub fn constant(geometry: LatticeGeometry, c: Complex64) -> Self {
        let mut s = Self::new(geometry, "constant");
        s.set(0, 0, c);
        s
    }

    pub fn set(&mut self, m: i64, n: i64, value: Complex64) {
        if value == Complex64::ZERO {
            self.coefficients.remove(&(m, n));
        } else {
            self.coefficients.insert((m, n), value);
        }
    }

    pub fn add(&mut self, m: i64, n: i64, value: Complex64) {
        let entry = self.coefficients.entry((m, n)).or_insert(Complex64::ZERO);
        *entry += value;
    }

    pub fn coefficient(&self, m: i64, n: i64) -> Complex64 {
        self.coefficients.get(&(m, n)).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coefficients(&self) -> &BTreeMap<(i64, i64), Complex64> {
        &self.coefficients
    }

    pub fn geometry(&self) -> LatticeGeometry {
        self.geometry
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// ℓ¹ mass of coefficients dropped when this symbol was truncated from
    /// an infinite series; bounds the entrywise operator error.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn set_tail_bound(&mut self, bound: f64) {
        self.tail_bound = bound;
    }

    /// Whether the coefficients satisfy the reality condition
    /// f_{−m,−n} = conj(f_{mn}) within `tol` (absolute).
    pub fn is_real_symbol(&self, tol: f64) -> bool {
        self.coefficients.iter().all(|(&(m, n), &c)| {
            (self.coefficient(-m, -n) - c.conj()).norm() <= tol
        })
    }

    /// Whether every index already lies in the fundamental window 0..N.
    pub fn is_folded(&self) -> bool {
        let n = self.geometry.n() as i64;
        self.coefficients
            .keys()
            .all(|&(m, nn)| (0..n).contains(&m) && (0..n).contains(&nn))
    }
}

/// Folds a symbol onto the fundamental index window 0 ≤ m,n < N using the
/// sign-twisted periodicity of the translations:
/// g_{mn} = Σ_{μν} f_{m+μN, n+νN} (−1)^{mν+nμ+μνN}.
///
/// The fold is exact on the stored (finite) support, so
/// op_N(folded) = op_N(original); any truncation error committed earlier is
/// carried over unchanged in the tail bound.
pub fn fold_symbol(sym: &TorusSymbol) -> Result<TorusSymbol> {
    for (_, c) in sym.coefficients() {
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::Convergence(format!(
                "symbol '{}' holds a non-finite coefficient",
                sym.label()
            )));
        }
    }
    let n = sym.geometry().n() as i64;
    let mut folded = TorusSymbol::new(sym.geometry(), format!("{}|folded", sym.label()));
    folded.set_tail_bound(sym.tail_bound());
    for (&(m_raw, n_raw), &c) in sym.coefficients() {
        let m = m_raw.rem_euclid(n);
        let nn = n_raw.rem_euclid(n);
        let mu = (m_raw - m) / n;
        let nu = (n_raw - nn) / n;
        let sign = periodicity_sign(sym.geometry().n(), m, nn, mu, nu);
        folded.add(m, nn, c * sign);
    }
    Ok(folded)
}

/// Weyl quantisation op_N(f) = Σ f_{mn} T^{m,n} as a dense matrix.
///
/// Symbols with support outside the fundamental window are folded first;
/// the result is identical either way. Assembly is done in complex
/// arithmetic and the hermiticity defect is recorded on the result.
pub fn weyl_quantize(sym: &TorusSymbol) -> Result<QuantumOperator> {
    let folded;
    let working = if sym.is_folded() {
        sym
    } else {
        folded = fold_symbol(sym)?;
        &folded
    };
    let geometry = working.geometry();
    let n_dim = geometry.n();
    let nn = n_dim as f64;
    let mut matrix: DMatrix<Complex64> = DMatrix::zeros(n_dim, n_dim);
    for (&(m, n), &c) in working.coefficients() {
        // (T^{m,n})_{k,l} = e^{-i pi nm/N} e^{-2 pi i kn/N} delta_{k+m,l}
        let comp_phase = -PI * (n as f64) * (m as f64) / nn;
        for i in 0..n_dim {
            let k = geometry.signed_index(i);
            let j = geometry.memory_index(k + m);
            let row_phase = -2.0 * PI * (k * n) as f64 / nn;
            matrix[(i, j)] += c * Complex64::from_polar(1.0, comp_phase + row_phase);
        }
    }
    Ok(QuantumOperator::new(matrix, geometry, AssemblyRoute::FoldedCoefficients))
}
