//! Dense real-symmetric eigendecomposition with certified residuals.
//!
//! The solver is Householder tridiagonalisation followed by implicit-shift
//! QL iteration, with a fixed sweep order so repeated runs agree bitwise.
//! Complex Hermitian input is handled by the real 2N×2N embedding
//! [[Re A, −Im A], [Im A, Re A]], whose spectrum doubles that of A.
//!
//! Every decomposition records a trace-consistency defect; decompositions
//! with vectors additionally record the worst residual ‖Av − λv‖₂ and the
//! orthogonality defect max|VᵀV − I|, and fail loudly if either exceeds its
//! certificate bound.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::geometry::{LatticeGeometry, REL_TOL};
use crate::operator::{AssemblyRoute, QuantumOperator};

/// Certificate bound: residuals and orthogonality defects must stay below
/// `CERT_TOL` times the spectral-norm estimate (respectively 1).
pub const CERT_TOL: f64 = 1e-9;

/// Iteration cap per eigenvalue in the QL stage.
pub const MAX_QL_ITERATIONS: usize = 50;

/// Version tag entering cache keys; bump when the algorithm changes.
pub const SOLVER_VERSION: &str = "householder-ql-1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverMetadata {
    pub solver: String,
    pub version: String,
    /// Total QL rotations-sweeps performed.
    pub iterations: usize,
    pub wall_time_s: f64,
}

/// The cacheable result of a decomposition: sorted eigenvalues plus
/// certificates, without eigenvectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub geometry: LatticeGeometry,
    pub assembly_route: AssemblyRoute,
    /// Ascending eigenvalues, length N.
    pub eigenvalues: Vec<f64>,
    /// max_i ‖Av_i − λ_i v_i‖₂; present only when vectors were computed.
    pub max_residual: Option<f64>,
    /// max |V†V − I| entrywise; present only when vectors were computed.
    pub orthogonality_defect: Option<f64>,
    /// |Σλ − tr A|.
    pub trace_defect: f64,
    pub solver: SolverMetadata,
}

impl SpectrumRecord {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()))
    }

    /// Histogram of the eigenvalues; see [`crate::stats::histogram`].
    pub fn histogram(&self, spec: &crate::stats::HistogramSpec) -> Vec<(f64, f64)> {
        crate::stats::histogram(&self.eigenvalues, spec)
    }

    /// Nearest-K density estimate d^K(E); see [`crate::stats::dk_estimate`].
    pub fn dk_estimate(&self, energy: f64, k: usize) -> Result<f64> {
        crate::stats::dk_estimate(&self.eigenvalues, energy, k)
    }

    /// Exact count of eigenvalues with |Eₙ − E| ≤ rħ, using this record's ħ.
    pub fn local_count(&self, energy: f64, r: f64) -> Result<usize> {
        crate::stats::local_count(&self.eigenvalues, energy, r, self.geometry.hbar())
    }

    /// Symmetry defect about zero; requires ℓx = ℓξ.
    pub fn symmetry_defect(&self) -> Result<f64> {
        crate::stats::symmetry_defect(self.geometry, &self.eigenvalues)
    }
}

/// A record together with the eigenvector matrix when requested.
/// Column i of `vectors` belongs to `record.eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub record: SpectrumRecord,
    pub vectors: Option<DMatrix<Complex64>>,
}

/// Upper estimate of the spectral norm via the row-sum (∞) norm; for
/// Hermitian matrices this always dominates the largest |eigenvalue|.
pub fn spectral_norm_estimate(op: &QuantumOperator) -> f64 {
    row_sum_norm_complex(op.matrix())
}

fn row_sum_norm_complex(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut best = 0.0f64;
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n {
            s += m[(i, j)].norm();
        }
        best = best.max(s);
    }
    best
}

fn row_sum_norm_real(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut best = 0.0f64;
    for i in 0..n {
        let mut s = 0.0;
        for j in 0..n {
            s += m[(i, j)].abs();
        }
        best = best.max(s);
    }
    best
}

/// Full decomposition of a Hermitian operator.
///
/// Real-symmetric input (the generic case here) uses the real solver
/// directly; complex Hermitian input goes through the embedding. Input with
/// a hermiticity defect above `REL_TOL`·max|A| is rejected.
pub fn eigendecompose(op: &QuantumOperator, want_vectors: bool) -> Result<EigenDecomposition> {
    eigendecompose_with_tolerance(op, want_vectors, CERT_TOL)
}

/// [`eigendecompose`] with an overridden certificate tolerance (the factor
/// multiplying the norm estimate for residuals and N·max|A| for the trace).
pub fn eigendecompose_with_tolerance(
    op: &QuantumOperator,
    want_vectors: bool,
    cert_tol: f64,
) -> Result<EigenDecomposition> {
    let start = Instant::now();
    let scale = op.max_abs().max(f64::MIN_POSITIVE);
    let defect = op.hermiticity_defect();
    if defect > REL_TOL * scale {
        return Err(Error::NonHermitian { defect, allowed: REL_TOL * scale });
    }

    let (eigenvalues, vectors, iterations, norm_est, trace_defect) =
        if op.max_imag() <= REL_TOL * scale {
            decompose_real_path(op, want_vectors)?
        } else {
            decompose_hermitian_path(op, want_vectors)?
        };

    let (max_residual, orthogonality_defect) = match &vectors {
        Some(v) => {
            let (res, orth) = certify(op.matrix(), &eigenvalues, v);
            if res > cert_tol * norm_est.max(f64::MIN_POSITIVE) {
                return Err(Error::Certificate(format!(
                    "max residual {res:e} exceeds {:e}",
                    cert_tol * norm_est
                )));
            }
            if orth > cert_tol {
                return Err(Error::Certificate(format!(
                    "orthogonality defect {orth:e} exceeds {cert_tol:e}"
                )));
            }
            (Some(res), Some(orth))
        }
        None => (None, None),
    };

    let n = op.n() as f64;
    if trace_defect > cert_tol * n * scale {
        return Err(Error::Certificate(format!(
            "trace defect {trace_defect:e} exceeds {:e}",
            cert_tol * n * scale
        )));
    }

    let record = SpectrumRecord {
        geometry: op.geometry(),
        assembly_route: op.route(),
        eigenvalues,
        max_residual,
        orthogonality_defect,
        trace_defect,
        solver: SolverMetadata {
            solver: "householder-ql".into(),
            version: SOLVER_VERSION.into(),
            iterations,
            wall_time_s: start.elapsed().as_secs_f64(),
        },
    };
    Ok(EigenDecomposition { record, vectors })
}

type RealPathOut = (Vec<f64>, Option<DMatrix<Complex64>>, usize, f64, f64);

fn decompose_real_path(op: &QuantumOperator, want_vectors: bool) -> Result<RealPathOut> {
    let n = op.n();
    // symmetrise explicitly so rounding asymmetry cannot leak in
    let mut a = DMatrix::from_fn(n, n, |i, j| {
        0.5 * (op.matrix()[(i, j)].re + op.matrix()[(j, i)].re)
    });
    let trace: f64 = (0..n).map(|i| a[(i, i)]).sum();
    let norm_est = row_sum_norm_real(&a);
    let (values, vectors, iterations) = symmetric_eigen(&mut a, want_vectors)?;
    let trace_defect = (values.iter().sum::<f64>() - trace).abs();
    let vectors = vectors.map(|v| v.map(|x| Complex64::new(x, 0.0)));
    Ok((values, vectors, iterations, norm_est, trace_defect))
}

fn decompose_hermitian_path(op: &QuantumOperator, want_vectors: bool) -> Result<RealPathOut> {
    let n = op.n();
    let m = op.matrix();
    // real embedding; symmetrised from the Hermitian parts
    let mut big = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let her = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            big[(i, j)] = her.re;
            big[(n + i, n + j)] = her.re;
            big[(i, n + j)] = -her.im;
            big[(n + i, j)] = her.im;
        }
    }
    let norm_est = row_sum_norm_complex(m);
    let trace: f64 = (0..n).map(|i| m[(i, i)].re).sum();
    let (big_values, big_vectors, iterations) = symmetric_eigen(&mut big, want_vectors)?;

    // every eigenvalue of A appears twice; average each adjacent pair
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        values.push(0.5 * (big_values[2 * i] + big_values[2 * i + 1]));
    }
    let trace_defect = (values.iter().sum::<f64>() - trace).abs();

    let vectors = match big_vectors {
        Some(bv) if want_vectors => Some(recover_complex_vectors(n, &values, &big_values, &bv)?),
        _ => None,
    };
    Ok((values, vectors, iterations, norm_est, trace_defect))
}

/// Rebuilds complex eigenvectors w = u + iv from embedding columns (u; v),
/// re-orthonormalising inside (near-)degenerate clusters. The embedding
/// doubles every eigenspace, so each cluster of 2k real columns spans a
/// k-dimensional complex space; modified Gram–Schmidt picks k independent
/// representatives deterministically.
fn recover_complex_vectors(
    n: usize,
    values: &[f64],
    big_values: &[f64],
    bv: &DMatrix<f64>,
) -> Result<DMatrix<Complex64>> {
    let scale = values.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
    let cluster_tol = 1e-7 * scale;
    let mut out: DMatrix<Complex64> = DMatrix::zeros(n, n);
    let mut kept = 0usize;
    let mut col = 0usize;
    while kept < n {
        // cluster of duplicated eigenvalues in the embedding
        let start = col;
        while col < 2 * n && (big_values[col] - big_values[start]).abs() <= cluster_tol {
            col += 1;
        }
        let cluster = col - start; // = 2k
        let want = cluster / 2;
        let mut found = 0usize;
        for c in start..col {
            if found == want {
                break;
            }
            let mut w: Vec<Complex64> = (0..n)
                .map(|r| Complex64::new(bv[(r, c)], bv[(r + n, c)]))
                .collect();
            // project out previously kept vectors of this cluster
            for k in (kept - found)..kept {
                let overlap: Complex64 =
                    (0..n).map(|r| out[(r, k)].conj() * w[r]).sum();
                for r in 0..n {
                    let sub = overlap * out[(r, k)];
                    w[r] -= sub;
                }
            }
            let norm: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-6 {
                for (r, z) in w.iter().enumerate() {
                    out[(r, kept)] = z / norm;
                }
                kept += 1;
                found += 1;
            }
        }
        if found != want {
            return Err(Error::Certificate(format!(
                "could not extract {want} independent eigenvectors from a cluster of {cluster}"
            )));
        }
    }
    Ok(out)
}

fn certify(
    a: &DMatrix<Complex64>,
    values: &[f64],
    vectors: &DMatrix<Complex64>,
) -> (f64, f64) {
    let n = a.nrows();
    let mut worst_residual = 0.0f64;
    for (j, &lambda) in values.iter().enumerate() {
        let mut norm_sq = 0.0;
        for i in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += a[(i, k)] * vectors[(k, j)];
            }
            acc -= lambda * vectors[(i, j)];
            norm_sq += acc.norm_sqr();
        }
        worst_residual = worst_residual.max(norm_sq.sqrt());
    }
    let mut worst_orth = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::ZERO;
            for k in 0..n {
                acc += vectors[(k, i)].conj() * vectors[(k, j)];
            }
            if i == j {
                acc -= Complex64::ONE;
            }
            worst_orth = worst_orth.max(acc.norm());
        }
    }
    (worst_residual, worst_orth)
}

/// Core real-symmetric solver. Destroys `a`; returns ascending eigenvalues,
/// optional orthonormal eigenvector columns, and the QL iteration count.
fn symmetric_eigen(
    a: &mut DMatrix<f64>,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<DMatrix<f64>>, usize)> {
    let n = a.nrows();
    if n == 0 {
        return Ok((Vec::new(), None, 0));
    }
    let (mut d, mut e, mut z) = householder_tridiagonalize(a, want_vectors);
    let iterations = ql_implicit(&mut d, &mut e, z.as_mut())?;

    // deterministic ascending sort, stable in the original index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues").then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = z.map(|zm| {
        let mut sorted = DMatrix::zeros(n, n);
        for (new, &old) in order.iter().enumerate() {
            for r in 0..n {
                sorted[(r, new)] = zm[(r, old)];
            }
        }
        sorted
    });
    Ok((values, vectors, iterations))
}

/// Householder reduction to tridiagonal form. Returns the diagonal d, the
/// subdiagonal e (e[i] couples i and i+1, e[n−1] unused), and, when
/// requested, the accumulated orthogonal transform Q with A = Q T Qᵀ.
fn householder_tridiagonalize(
    a: &mut DMatrix<f64>,
    accumulate: bool,
) -> (Vec<f64>, Vec<f64>, Option<DMatrix<f64>>) {
    let n = a.nrows();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0f64;
        if l > 0 {
            let mut scale = 0.0f64;
            for k in 0..=l {
                scale += a[(i, k)].abs();
            }
            if scale == 0.0 {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = 0.0f64;
                for j in 0..=l {
                    if accumulate {
                        a[(j, i)] = a[(i, j)] / h;
                    }
                    let mut g_acc = 0.0f64;
                    for k in 0..=j {
                        g_acc += a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[(j, k)] -= f * e[k] + g * a[(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }

    if accumulate {
        d[0] = 0.0;
    }
    e[0] = 0.0;

    let z = if accumulate {
        // accumulate the Householder transforms into the identity
        for i in 0..n {
            if i > 0 {
                let l = i; // columns 0..i
                if d[i] != 0.0 {
                    for j in 0..l {
                        let mut g = 0.0f64;
                        for k in 0..l {
                            g += a[(i, k)] * a[(k, j)];
                        }
                        for k in 0..l {
                            a[(k, j)] -= g * a[(k, i)];
                        }
                    }
                }
            }
            d[i] = a[(i, i)];
            a[(i, i)] = 1.0;
            if i > 0 {
                for j in 0..i {
                    a[(j, i)] = 0.0;
                    a[(i, j)] = 0.0;
                }
            }
        }
        Some(a.clone())
    } else {
        for i in 0..n {
            d[i] = a[(i, i)];
        }
        None
    };

    // shift e so that e[i] couples d[i] and d[i+1]
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    (d, e, z)
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix, updating
/// the transform columns in place when given. Returns the total number of
/// implicit QL sweeps.
fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    mut z: Option<&mut DMatrix<f64>>,
) -> Result<usize> {
    let n = d.len();
    let mut total_iterations = 0usize;
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // find a split point with negligible subdiagonal
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            total_iterations += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: iter,
                    converged: l,
                    dimension: n,
                });
            }
            // Wilkinson-style shift from the leading 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // recover from underflow by deflating
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zm) = z.as_deref_mut() {
                    let rows = zm.nrows();
                    for k in 0..rows {
                        f = zm[(k, i + 1)];
                        zm[(k, i + 1)] = s * zm[(k, i)] + c * f;
                        zm[(k, i)] = c * zm[(k, i)] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(total_iterations)
}
