//! Plain-text persistence: CSV for matrices and plot tables, JSON for
//! spectrum records. Floats are rendered with 17 significant digits so a
//! write–read round trip reproduces every bit.

use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::eigen::SpectrumRecord;
use crate::error::{Error, Result};
use crate::stats::{RegimeRow, SweepRow};

/// 17 significant digits: enough to reproduce any f64 exactly.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad float {s:?}: {e}")))
}

/// Writes a real matrix as header-less CSV, row-major, rows and columns in
/// ascending canonical index order.
pub fn write_matrix_csv(path: &Path, matrix: &DMatrix<f64>) -> Result<()> {
    let mut out = String::new();
    for i in 0..matrix.nrows() {
        let row: Vec<String> = (0..matrix.ncols()).map(|j| format_f64(matrix[(i, j)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    atomic_write(path, out.as_bytes())
}

/// Reads a matrix written by [`write_matrix_csv`].
pub fn read_matrix_csv(path: &Path) -> Result<DMatrix<f64>> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<f64>> = line.split(',').map(parse_f64).collect();
        rows.push(row?);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix file".into()));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    let nrows = rows.len();
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

/// A spectrum record together with the symbol it belongs to; the on-disk
/// JSON unit for both the cache and the `spectrum` command output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub symbol: String,
    #[serde(flatten)]
    pub record: SpectrumRecord,
}

pub fn spectrum_to_json(doc: &SpectrumDocument) -> Result<String> {
    serde_json::to_string_pretty(doc).map_err(|e| Error::Parse(format!("serialise: {e}")))
}

pub fn spectrum_from_json(text: &str) -> Result<SpectrumDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("deserialise: {e}")))
}

pub fn write_spectrum_json(path: &Path, doc: &SpectrumDocument) -> Result<()> {
    let mut text = spectrum_to_json(doc)?;
    text.push('\n');
    atomic_write(path, text.as_bytes())
}

pub fn read_spectrum_json(path: &Path) -> Result<SpectrumDocument> {
    spectrum_from_json(&fs::read_to_string(path)?)
}

/// Eigenvalues as `index,eigenvalue` CSV.
pub fn write_eigenvalues_csv(path: &Path, eigenvalues: &[f64]) -> Result<()> {
    let mut out = String::from("index,eigenvalue\n");
    for (i, v) in eigenvalues.iter().enumerate() {
        out.push_str(&format!("{i},{}\n", format_f64(*v)));
    }
    atomic_write(path, out.as_bytes())
}

/// Histogram table with the semiclassical density column alongside.
pub fn write_histogram_csv(path: &Path, rows: &[(f64, f64, f64)]) -> Result<()> {
    let mut out = String::from("bin_center,density,semiclassical_d\n");
    for (center, density, d) in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            format_f64(*center),
            format_f64(*density),
            format_f64(*d)
        ));
    }
    atomic_write(path, out.as_bytes())
}

/// Density-sweep table plus the trailing summary row holding the mean
/// relative deviation over N ≥ 500.
pub fn write_sweep_csv(path: &Path, rows: &[SweepRow], summary: f64) -> Result<()> {
    let mut out = String::from("N,E,d_K,mean_density,rel_dev\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            format_f64(r.energy),
            format_f64(r.dk),
            format_f64(r.mean_density),
            format_f64(r.rel_deviation)
        ));
    }
    out.push_str(&format!("mean,,,,{}\n", format_f64(summary)));
    atomic_write(path, out.as_bytes())
}

pub fn write_regimes_csv(path: &Path, rows: &[RegimeRow]) -> Result<()> {
    let mut out =
        String::from("N,nu,E_predicted,spacing_predicted,E_exact,spacing_exact,density_class\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{:?}\n",
            r.n,
            r.nu,
            format_f64(r.eigenvalue_predicted),
            format_f64(r.spacing_predicted),
            format_f64(r.eigenvalue_exact),
            format_f64(r.spacing_exact),
            r.density_class
        ));
    }
    atomic_write(path, out.as_bytes())
}

/// Write-then-rename so concurrent readers never observe partial files.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!(
        "tmp.{}",
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::SolverMetadata;
    use std::f64::consts::PI;
    use crate::geometry::LatticeGeometry;
    use crate::operator::AssemblyRoute;

    #[test]
    fn matrix_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        let m = DMatrix::from_fn(5, 5, |i, j| {
            ((i * 31 + j * 17) as f64).sin() * 1e3 + 1.0 / (1 + i + j) as f64
        });
        write_matrix_csv(&path, &m).unwrap();
        let back = read_matrix_csv(&path).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m[(i, j)].to_bits(), back[(i, j)].to_bits());
            }
        }
    }

    #[test]
    fn spectrum_json_round_trip() {
        let g = LatticeGeometry::symmetric(4, 1.0).unwrap();
        let doc = SpectrumDocument {
            symbol: "h".into(),
            record: SpectrumRecord {
                geometry: g,
                assembly_route: AssemblyRoute::FoldedCoefficients,
                // deliberately awkward decimals; parse must recover each bit
                eigenvalues: vec![-(2.0f64.sqrt()), -1.0 / 3.0, 0.1 + 0.2, (32.0 * PI).sqrt()],
                max_residual: Some(1e-13),
                orthogonality_defect: Some(2e-14),
                trace_defect: 0.0,
                solver: SolverMetadata {
                    solver: "householder-ql".into(),
                    version: "test".into(),
                    iterations: 7,
                    wall_time_s: 0.001,
                },
            },
        };
        let text = spectrum_to_json(&doc).unwrap();
        let back = spectrum_from_json(&text).unwrap();
        assert_eq!(doc.record.eigenvalues, back.record.eigenvalues);
        // canonical form: serialising again reproduces the same bytes
        assert_eq!(text, spectrum_to_json(&back).unwrap());
    }

    #[test]
    fn format_f64_round_trips_extremes() {
        for x in [0.1, -1.0 / 3.0, 1e-300, std::f64::consts::PI * 1e15, 2.2250738585072014e-308] {
            let s = format_f64(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
