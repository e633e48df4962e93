//! Empirical spectral statistics: histograms, the nearest-K local density
//! estimator d^K, exact local counting, symmetry diagnostics, and the
//! scaling-regime sweeps over ℓξ = A·N^α, ℓx = B·N^{1−α}.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::LatticeGeometry;
use crate::semiclassics;

// ---------------------------------------------------------------------------
// Histograms
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalisation {
    /// Raw counts per bin.
    Counts,
    /// Counts divided by the bin width, so the histogram integrates to the
    /// number of eigenvalues inside the range.
    Density,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct HistogramSpec {
    pub e_min: f64,
    pub e_max: f64,
    pub bin_count: usize,
    pub normalisation: Normalisation,
}

impl HistogramSpec {
    pub fn new(e_min: f64, e_max: f64, bin_count: usize, normalisation: Normalisation) -> Result<Self> {
        if !(e_min < e_max) {
            return Err(Error::Domain(format!(
                "histogram range is empty: [{e_min}, {e_max}]"
            )));
        }
        if bin_count == 0 {
            return Err(Error::Domain("bin count must be positive".into()));
        }
        Ok(Self { e_min, e_max, bin_count, normalisation })
    }

    /// Default bin count ⌈√N⌉ for an N-point spectrum.
    pub fn default_bins(n: usize) -> usize {
        (n as f64).sqrt().ceil() as usize
    }

    pub fn bin_width(&self) -> f64 {
        (self.e_max - self.e_min) / self.bin_count as f64
    }
}

/// Uniform histogram of the eigenvalues: pairs (bin centre, value).
/// Values exactly at `e_max` land in the last bin; values outside the range
/// are ignored.
pub fn histogram(eigenvalues: &[f64], spec: &HistogramSpec) -> Vec<(f64, f64)> {
    let width = spec.bin_width();
    let mut counts = vec![0usize; spec.bin_count];
    for &x in eigenvalues {
        if x < spec.e_min || x > spec.e_max {
            continue;
        }
        let mut bin = ((x - spec.e_min) / width) as usize;
        if bin >= spec.bin_count {
            bin = spec.bin_count - 1;
        }
        counts[bin] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let center = spec.e_min + (i as f64 + 0.5) * width;
            let value = match spec.normalisation {
                Normalisation::Counts => c as f64,
                Normalisation::Density => c as f64 / width,
            };
            (center, value)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Local density estimators
// ---------------------------------------------------------------------------

/// The nearest-K density estimate d^K(E) = (K−1)/(E^K_max − E^K_min) from
/// the K eigenvalues closest to E. Ties in the distance are broken toward
/// the smaller sorted index, hence toward the smaller eigenvalue.
pub fn dk_estimate(sorted_eigenvalues: &[f64], energy: f64, k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::Domain(format!("K must be at least 2, got {k}")));
    }
    if sorted_eigenvalues.len() < k {
        return Err(Error::Domain(format!(
            "spectrum holds {} eigenvalues, need at least K = {k}",
            sorted_eigenvalues.len()
        )));
    }
    let mut order: Vec<usize> = (0..sorted_eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        let di = (sorted_eigenvalues[i] - energy).abs();
        let dj = (sorted_eigenvalues[j] - energy).abs();
        di.partial_cmp(&dj).expect("finite eigenvalues").then(i.cmp(&j))
    });
    let chosen = &order[..k];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &i in chosen {
        lo = lo.min(sorted_eigenvalues[i]);
        hi = hi.max(sorted_eigenvalues[i]);
    }
    if hi == lo {
        return Err(Error::Domain(format!(
            "degenerate window: the {k} eigenvalues nearest {energy} coincide"
        )));
    }
    Ok((k as f64 - 1.0) / (hi - lo))
}

/// Exact local count #{n : |Eₙ − E| ≤ rħ}.
pub fn local_count(eigenvalues: &[f64], energy: f64, r: f64, hbar: f64) -> Result<usize> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("window radius must be positive, got {r}")));
    }
    let half_width = r * hbar;
    Ok(eigenvalues
        .iter()
        .filter(|&&x| (x - energy).abs() <= half_width)
        .count())
}

/// Symmetry defect max_i |λ_i + λ_{N+1−i}| / max|λ| of a sorted spectrum.
/// Requires ℓx = ℓξ, where the spectrum is symmetric about zero.
pub fn symmetry_defect(geometry: LatticeGeometry, sorted_eigenvalues: &[f64]) -> Result<f64> {
    if !geometry.is_symmetric() {
        return Err(Error::Precondition(format!(
            "spectral symmetry requires ell_x = ell_xi, got {} and {}",
            geometry.ell_x(),
            geometry.ell_xi()
        )));
    }
    let n = sorted_eigenvalues.len();
    let scale = sorted_eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        worst = worst.max((sorted_eigenvalues[i] + sorted_eigenvalues[n - 1 - i]).abs());
    }
    Ok(worst / scale)
}

// ---------------------------------------------------------------------------
// Density sweep over N (the mean-density comparison)
// ---------------------------------------------------------------------------

/// Plan for the N-sweep comparing d^K against the logarithmic mean density:
/// ħ = 1, ℓx = ℓξ = √(2πN), evaluated at E(N) = π√(2N) − 2π.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepPlan {
    pub n_values: Vec<usize>,
    pub k: usize,
    pub hbar: f64,
}

impl SweepPlan {
    pub fn new(n_values: Vec<usize>, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("K must be at least 2, got {k}")));
        }
        if n_values.is_empty() {
            return Err(Error::Domain("sweep needs at least one N".into()));
        }
        for &n in &n_values {
            if n < 10 * k {
                return Err(Error::Domain(format!(
                    "sweep requires N >= 10K; N = {n} is too small for K = {k}"
                )));
            }
        }
        Ok(Self { n_values, k, hbar: 1.0 })
    }

    pub fn geometry(&self, n: usize) -> Result<LatticeGeometry> {
        LatticeGeometry::symmetric(n, self.hbar)
    }

    pub fn energy(&self, n: usize) -> f64 {
        semiclassics::energy_of_n(n)
    }
}

/// One row of the density sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub energy: f64,
    pub dk: f64,
    pub mean_density: f64,
    pub rel_deviation: f64,
}

/// Evaluates one sweep entry from an already-computed sorted spectrum.
pub fn sweep_row(plan: &SweepPlan, n: usize, sorted_eigenvalues: &[f64]) -> Result<SweepRow> {
    let energy = plan.energy(n);
    let dk = dk_estimate(sorted_eigenvalues, energy, plan.k)?;
    let mean = semiclassics::mean_density(energy)?;
    Ok(SweepRow {
        n,
        energy,
        dk,
        mean_density: mean,
        rel_deviation: (dk - mean).abs() / mean,
    })
}

// ---------------------------------------------------------------------------
// Scaling regimes
// ---------------------------------------------------------------------------

/// The combined limit ℓξ = A·N^α, ℓx = B·N^{1−α} with A·B = 2πħ.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScalingRegime {
    pub alpha: f64,
    pub coeff_a: f64,
    pub coeff_b: f64,
    pub hbar: f64,
}

impl ScalingRegime {
    /// Builds the regime from (α, A, ħ); B = 2πħ/A holds by construction.
    pub fn new(alpha: f64, coeff_a: f64, hbar: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("alpha must lie in (0,1), got {alpha}")));
        }
        if !(coeff_a > 0.0) || !(hbar > 0.0) {
            return Err(Error::Domain("A and hbar must be positive".into()));
        }
        Ok(Self { alpha, coeff_a, coeff_b: 2.0 * PI * hbar / coeff_a, hbar })
    }

    pub fn geometry(&self, n: usize) -> Result<LatticeGeometry> {
        let ell_x = self.coeff_b * (n as f64).powf(1.0 - self.alpha);
        LatticeGeometry::new(n, ell_x, self.hbar)
    }
}

/// How the quantum number ν grows with N in a regime sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum NuRule {
    /// ν held fixed: probes a fixed set of modes.
    Fixed(i64),
    /// ν ∝ N^{1−α}: probes a fixed spectral range.
    FixedSpectralRange,
    /// ν ∝ N: probes the spectral edge.
    SpectralEdge,
}

impl NuRule {
    /// ν for a given N; the growing rules are clamped into the canonical
    /// window, which only matters for small N.
    fn nu(&self, n: usize, alpha: f64) -> i64 {
        let edge = ((n as i64) / 2 - 1).max(1);
        match self {
            NuRule::Fixed(nu) => *nu,
            NuRule::FixedSpectralRange => {
                ((n as f64).powf(1.0 - alpha).round() as i64).clamp(1, edge)
            }
            NuRule::SpectralEdge => (n as i64 / 4).clamp(1, edge),
        }
    }

    /// Growth exponent of ν(N) as a power of N.
    fn growth_exponent(&self, alpha: f64) -> f64 {
        match self {
            NuRule::Fixed(_) => 0.0,
            NuRule::FixedSpectralRange => 1.0 - alpha,
            NuRule::SpectralEdge => 1.0,
        }
    }
}

/// Asymptotic behaviour of the spacing s^N_ν along the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensityClass {
    /// Spacings tend to zero: the eigenvalues become dense.
    Dense,
    /// Spacings approach a constant.
    Marginal,
    /// Spacings grow: not dense.
    NotDense,
}

/// One row of a regime sweep: the scaling-law predictions next to the exact
/// plane-wave values computed through the geometry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimeRow {
    pub n: usize,
    pub nu: i64,
    pub eigenvalue_predicted: f64,
    pub spacing_predicted: f64,
    pub eigenvalue_exact: f64,
    pub spacing_exact: f64,
    pub density_class: DensityClass,
}

/// Evaluates E^N_ν = A²N^{2α−2}ν² and s^N_ν = A²N^{2α−2}(2ν+1) along
/// `n_values`, verifying both against the exact spectrum of the quantised
/// momentum symbol, and classifies whether the spacings tend to zero.
pub fn regime_sweep(
    regime: &ScalingRegime,
    n_values: &[usize],
    nu_rule: NuRule,
) -> Result<Vec<RegimeRow>> {
    let spacing_exponent = 2.0 * regime.alpha - 2.0 + nu_rule.growth_exponent(regime.alpha);
    let density_class = if spacing_exponent < -1e-12 {
        DensityClass::Dense
    } else if spacing_exponent > 1e-12 {
        DensityClass::NotDense
    } else {
        DensityClass::Marginal
    };
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let nu = nu_rule.nu(n, regime.alpha);
        if 2 * nu >= n as i64 {
            return Err(Error::Domain(format!(
                "nu = {nu} falls outside the canonical window for N = {n}"
            )));
        }
        let scale = regime.coeff_a * regime.coeff_a * (n as f64).powf(2.0 * regime.alpha - 2.0);
        let geometry = regime.geometry(n)?;
        let exact = |q: i64| (q as f64 * geometry.ell_xi() / n as f64).powi(2);
        rows.push(RegimeRow {
            n,
            nu,
            eigenvalue_predicted: scale * (nu * nu) as f64,
            spacing_predicted: scale * (2 * nu + 1) as f64,
            eigenvalue_exact: exact(nu),
            spacing_exact: exact(nu + 1) - exact(nu),
            density_class,
        });
    }
    Ok(rows)
}
