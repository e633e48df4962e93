//! Built-in invariant suite: every structural identity the crate relies on,
//! run at small N so a fresh checkout can verify itself in seconds.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bk;
use crate::eigen::{self, CERT_TOL};
use crate::geometry::{LatticeGeometry, REL_TOL};
use crate::operator::{dft_matrix, dft_matrix_inverse, AssemblyRoute, QuantumOperator};
use crate::semiclassics;
use crate::state::StateVector;
use crate::stats;
use crate::symbol::{fold_symbol, weyl_quantize, TorusSymbol};
use crate::translation::{periodicity_sign, translation_matrix, TranslationIndex};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SelfTestReport {
    pub checks: Vec<CheckResult>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Hooks for fault injection, used to prove the suite actually detects
/// broken invariants. `perturbation` is added to one off-diagonal entry of
/// the closed-form assembly before the cross-route comparison.
#[derive(Debug, Clone, Copy, Default)]
pub struct SelfTestOptions {
    pub perturbation: f64,
}

fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

fn check(name: &'static str, worst: f64, bound: f64) -> CheckResult {
    CheckResult {
        name,
        passed: worst <= bound,
        detail: format!("worst {worst:.3e}, bound {bound:.3e}"),
    }
}

pub fn run_selftest(options: SelfTestOptions) -> SelfTestReport {
    let mut checks = Vec::new();

    // unitarity of translations
    {
        let mut worst = 0.0f64;
        for n in [3usize, 4, 8, 16] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            for m in [-(n as i64), -1, 0, 1, 2, n as i64 + 3] {
                for k in [-2i64, 0, 1, n as i64] {
                    let t = translation_matrix(g, TranslationIndex::new(m, k));
                    let prod = t.matrix().adjoint() * t.matrix();
                    let id = DMatrix::from_fn(n, n, |i, j| {
                        if i == j { Complex64::ONE } else { Complex64::ZERO }
                    });
                    worst = worst.max(max_entry_diff(&prod, &id));
                }
            }
        }
        checks.push(check("translation unitarity", worst, 1e-12));
    }

    // composition phase T^{m,n} = e^{i pi mn/N} T^{m,0} T^{0,n}
    {
        let mut worst = 0.0f64;
        for n in [2usize, 5, 8] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            for m in -2..=2i64 {
                for k in -2..=2i64 {
                    let lhs = translation_matrix(g, TranslationIndex::new(m, k));
                    let phase = Complex64::from_polar(1.0, PI * (m * k) as f64 / n as f64);
                    let rhs = (translation_matrix(g, TranslationIndex::new(m, 0)).matrix()
                        * translation_matrix(g, TranslationIndex::new(0, k)).matrix())
                    .map(|z| phase * z);
                    worst = worst.max(max_entry_diff(lhs.matrix(), &rhs));
                }
            }
        }
        checks.push(check("translation composition phase", worst, 1e-12));
    }

    // sign-twisted periodicity
    {
        let mut worst = 0.0f64;
        for n in [2usize, 3, 4, 7] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            for m in 0..n as i64 {
                for k in 0..n as i64 {
                    let base = translation_matrix(g, TranslationIndex::new(m, k));
                    for mu in -2..=2i64 {
                        for nu in -2..=2i64 {
                            let shifted = translation_matrix(
                                g,
                                TranslationIndex::new(m + mu * n as i64, k + nu * n as i64),
                            );
                            let sign = periodicity_sign(n, m, k, mu, nu);
                            let scaled = base.matrix().map(|z| sign * z);
                            worst = worst.max(max_entry_diff(shifted.matrix(), &scaled));
                        }
                    }
                }
            }
        }
        checks.push(check("translation periodicity signs", worst, 1e-12));
    }

    // Fourier transform: unitarity, parity, conjugation of translations
    {
        let mut worst = 0.0f64;
        for n in 1..=8usize {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            let f = dft_matrix(g);
            let finv = dft_matrix_inverse(g);
            let id = DMatrix::from_fn(n, n, |i, j| {
                if i == j { Complex64::ONE } else { Complex64::ZERO }
            });
            worst = worst.max(max_entry_diff(&(f.matrix().adjoint() * f.matrix()), &id));
            // F^2 = parity
            let f2 = f.matrix() * f.matrix();
            let psi = StateVector::from_fn(g, |l| Complex64::new(l as f64 + 0.3, 0.1 * l as f64));
            let f2psi = QuantumOperator::new(f2, g, AssemblyRoute::Unitary).apply(&psi);
            for l in g.canonical_window() {
                worst = worst.max((f2psi.get(l) - psi.get(-l)).norm());
            }
            for m in 0..n as i64 {
                let conj = finv.matrix()
                    * translation_matrix(g, TranslationIndex::new(m, 0)).matrix()
                    * f.matrix();
                let want = translation_matrix(g, TranslationIndex::new(0, m));
                worst = worst.max(max_entry_diff(&conj, want.matrix()));
            }
        }
        checks.push(check("fourier parity and conjugation", worst, 1e-12));
    }

    // folding correctness on a generic sparse symbol
    {
        let mut worst = 0.0f64;
        for n in [2usize, 3, 5] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            let mut s = TorusSymbol::new(g, "selftest");
            s.set(3, -4, Complex64::new(0.21, 0.4));
            s.set(-3, 4, Complex64::new(0.21, -0.4));
            s.set(7, 2, Complex64::new(-0.5, 0.0));
            s.set(-7, -2, Complex64::new(-0.5, 0.0));
            let direct: DMatrix<Complex64> = s
                .coefficients()
                .iter()
                .map(|(&(m, k), &c)| {
                    translation_matrix(g, TranslationIndex::new(m, k)).matrix().map(|z| z * c)
                })
                .fold(DMatrix::zeros(n, n), |acc, m| acc + m);
            let folded = weyl_quantize(&fold_symbol(&s).unwrap()).unwrap();
            worst = worst.max(max_entry_diff(&direct, folded.matrix()));
        }
        checks.push(check("symbol folding", worst, 1e-12));
    }

    // closed-form folded coefficients vs truncated alias sums
    {
        let mut worst = 0.0f64;
        for n in [2usize, 3, 4, 5] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            for m in 0..n {
                let closed = bk::folded_half_coefficient(g.ell_xi(), n, m);
                let terms = if n % 2 == 0 { 200_000 } else { 2_000 };
                let oracle = bk::folded_half_coefficient_alias_sum(g.ell_xi(), n, m, terms);
                worst = worst.max((closed - oracle).abs() / closed.abs().max(1e-30));
            }
        }
        checks.push(check("folded coefficient closed forms", worst, 1e-4));
    }

    // representation equality, with the optional fault injection
    {
        let mut worst = 0.0f64;
        for n in 2..=16usize {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            let mut a = bk::assemble_appendix_b(g).matrix().clone();
            if options.perturbation != 0.0 {
                a[(0, 1)] += Complex64::new(options.perturbation * g.ell_sq(), 0.0);
            }
            let b = bk::assemble_finite_sum(g).unwrap();
            worst = worst.max(max_entry_diff(&a, b.matrix()) / g.ell_sq());
        }
        checks.push(check("representation equality", worst, 1e-12));
    }

    // exact spectrum of the quantised momentum symbol
    {
        let mut worst = 0.0f64;
        for n in [4usize, 8, 9, 16] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            let op = weyl_quantize(&bk::a_folded_symbol(g)).unwrap();
            let dec = eigen::eigendecompose(&op, false).unwrap();
            let exact = bk::analytic_spectrum_a(g);
            let scale = exact.eigenvalues().last().copied().unwrap_or(1.0);
            for (got, want) in dec.record.eigenvalues.iter().zip(exact.eigenvalues()) {
                let denom = if *want == 0.0 { scale } else { want.abs() };
                worst = worst.max((got - want).abs() / denom);
            }
        }
        checks.push(check("plane-wave spectrum oracle", worst, 1e-10));
    }

    // Fourier conjugation op_N(a) -> op_N(b)
    {
        let mut worst = 0.0f64;
        for n in 1..=16usize {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            let op_a = weyl_quantize(&bk::a_folded_symbol(g)).unwrap();
            let op_b = weyl_quantize(&bk::b_folded_symbol(g)).unwrap();
            let f = dft_matrix(g);
            let finv = dft_matrix_inverse(g);
            let conj = finv.matrix() * op_a.matrix() * f.matrix();
            worst = worst.max(max_entry_diff(&conj, op_b.matrix()) / op_a.max_abs());
        }
        checks.push(check("fourier conjugation a to b", worst, 1e-12));
    }

    // spectral symmetry and operator bounds
    {
        let mut worst_sym = 0.0f64;
        let mut worst_bound = 0.0f64;
        for n in [8usize, 9] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            let dec = eigen::eigendecompose(&bk::assemble_appendix_b(g), false).unwrap();
            worst_sym = worst_sym.max(stats::symmetry_defect(g, &dec.record.eigenvalues).unwrap());
            let (lo, hi) = bk::operator_bounds(g);
            let slack = 1e-9 * g.ell_sq();
            for &e in &dec.record.eigenvalues {
                worst_bound = worst_bound.max((lo - slack - e).max(e - hi - slack).max(0.0));
            }
        }
        checks.push(check("spectral symmetry", worst_sym, 1e-9));
        checks.push(check("operator bounds", worst_bound, 0.0));
    }

    // eigensolver certificates
    {
        let g = LatticeGeometry::symmetric(16, 1.0).unwrap();
        let op = bk::assemble_appendix_b(g);
        let dec = eigen::eigendecompose(&op, true).unwrap();
        let est = eigen::spectral_norm_estimate(&op);
        let res = dec.record.max_residual.unwrap_or(f64::INFINITY);
        let orth = dec.record.orthogonality_defect.unwrap_or(f64::INFINITY);
        checks.push(check("eigen residual certificate", res, CERT_TOL * est));
        checks.push(check("eigen orthogonality certificate", orth, CERT_TOL));
        checks.push(check(
            "eigen trace certificate",
            dec.record.trace_defect,
            CERT_TOL * 16.0 * op.max_abs(),
        ));
    }

    // semiclassical identities
    {
        let g = LatticeGeometry::symmetric(64, 1.0).unwrap();
        let lxi2 = g.ell_xi() * g.ell_xi();
        let mut worst_fd = 0.0f64;
        let lo = (lxi2 / 800.0).ln();
        let hi = (lxi2 / 8.0 * (1.0 - 1e-3)).ln();
        for i in 0..24 {
            let e = (lo + (hi - lo) * i as f64 / 23.0).exp();
            let h = 1e-6 * e;
            let fd = (semiclassics::action(g, e + h).unwrap()
                - semiclassics::action(g, e - h).unwrap())
                / (2.0 * h);
            let t = semiclassics::period(g, e).unwrap();
            worst_fd = worst_fd.max((fd - t).abs() / t.abs());
        }
        checks.push(check("period is action derivative", worst_fd, 1e-6));

        let mut worst_id = 0.0f64;
        for i in 0..100 {
            let e = 2.0 * PI + (1e4 - 2.0 * PI) * i as f64 / 99.0;
            let lhs = 4.0 * ((e - 2.0 * PI) / (8.0 * PI * e).sqrt()).asinh();
            let rhs = 2.0 * (e / (2.0 * PI)).ln();
            worst_id = worst_id.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
        }
        checks.push(check("arsinh-log identity", worst_id, 1e-10));
    }

    // statistics primitives
    {
        let spectrum: Vec<f64> = (0..40).map(|i| i as f64 * 0.25).collect();
        let dk = stats::dk_estimate(&spectrum, 5.1, 4).unwrap();
        let worst = (dk - 4.0).abs();
        checks.push(check("uniform-spacing dk estimate", worst, 1e-12));

        let spec = stats::HistogramSpec::new(0.0, 10.0, 7, stats::Normalisation::Density).unwrap();
        let h = stats::histogram(&spectrum, &spec);
        let integral: f64 = h.iter().map(|(_, v)| v * spec.bin_width()).sum();
        let inside = spectrum.iter().filter(|&&x| (0.0..=10.0).contains(&x)).count() as f64;
        checks.push(check("histogram density integral", (integral - inside).abs(), 0.0));

        let mut monotone = true;
        let mut last = 0usize;
        for i in 1..=20 {
            let c = stats::local_count(&spectrum, 5.0, i as f64 * 0.3, 1.0).unwrap();
            if c < last {
                monotone = false;
            }
            last = c;
        }
        checks.push(CheckResult {
            name: "local count monotone",
            passed: monotone,
            detail: String::new(),
        });
    }

    // hermiticity of assembled operators
    {
        let mut worst = 0.0f64;
        for n in [2usize, 5, 12] {
            let g = LatticeGeometry::symmetric(n, 1.0).unwrap();
            for op in [
                bk::assemble_appendix_b(g),
                bk::assemble_finite_sum(g).unwrap(),
                weyl_quantize(&bk::h_folded_symbol(g)).unwrap(),
            ] {
                worst = worst.max(op.hermiticity_defect() / op.max_abs().max(f64::MIN_POSITIVE));
            }
        }
        checks.push(check("assembled operators hermitian", worst, REL_TOL));
    }

    SelfTestReport { checks }
}
