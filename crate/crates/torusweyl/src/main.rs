//! Thin command-line front end; all heavy lifting lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use torusweyl::bk;
use torusweyl::cache::{CacheKey, CacheLookup, SpectrumCache};
use torusweyl::config::{CommandConfig, RouteChoice, RunConfig, SymbolChoice};
use torusweyl::eigen;
use torusweyl::error::{Error, Result};
use torusweyl::geometry::LatticeGeometry;
use torusweyl::io::{self, SpectrumDocument};
use torusweyl::operator::AssemblyRoute;
use torusweyl::selftest::{run_selftest, SelfTestOptions};
use torusweyl::semiclassics;
use torusweyl::stats::{self, HistogramSpec, Normalisation, NuRule, SweepPlan};
use torusweyl::symbol::weyl_quantize;

/// Above this dimension the spectrum command skips eigenvectors (and hence
/// residual certificates); trace consistency is still checked.
const CERTIFY_VECTORS_MAX_N: usize = 512;

#[derive(Parser)]
#[command(name = "torusweyl", version, about = "Lattice operators on a torus phase space: build, diagonalise, compare against exact and semiclassical spectra")]
struct Cli {
    /// Semiclassical constant ħ.
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,

    /// Output file path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Spectrum cache directory (falls back to $TORUSWEYL_CACHE, then
    /// .torusweyl-cache).
    #[arg(long = "cache-dir", global = true)]
    cache_dir: Option<PathBuf>,

    /// Override of the eigensolver certificate tolerance (default 1e-9
    /// relative to the norm estimate).
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RouteArg {
    #[value(name = "appendixB", alias = "appendixb")]
    AppendixB,
    Finite,
    Both,
}

impl From<RouteArg> for RouteChoice {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::AppendixB => RouteChoice::AppendixB,
            RouteArg::Finite => RouteChoice::Finite,
            RouteArg::Both => RouteChoice::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymbolArg {
    H,
    A,
    B,
}

impl From<SymbolArg> for SymbolChoice {
    fn from(s: SymbolArg) -> Self {
        match s {
            SymbolArg::H => SymbolChoice::H,
            SymbolArg::A => SymbolChoice::A,
            SymbolArg::B => SymbolChoice::B,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NuRuleArg {
    /// Hold ν fixed.
    Fixed,
    /// ν ∝ N^{1−α}: fixed spectral range.
    Range,
    /// ν ∝ N: spectral edge.
    Edge,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble op_N(h) and write it as CSV.
    Build {
        #[arg(long = "N")]
        n: usize,
        /// Configuration-space length; defaults to the symmetric √(2πħN).
        #[arg(long = "ellx")]
        ell_x: Option<f64>,
        #[arg(long, value_enum, default_value = "appendixB")]
        route: RouteArg,
    },
    /// Diagonalise a quantised symbol, cache-aware; writes a JSON record.
    Spectrum {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "ellx")]
        ell_x: Option<f64>,
        #[arg(long, value_enum, default_value = "h")]
        symbol: SymbolArg,
        #[arg(long, value_enum, default_value = "appendixB")]
        route: RouteArg,
        /// Also write the plain eigenvalue list as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Eigenvalue histogram next to the semiclassical density.
    Histogram {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "ellx")]
        ell_x: Option<f64>,
        /// Bin count; defaults to ⌈√N⌉.
        #[arg(long)]
        bins: Option<usize>,
        #[arg(long = "e-min")]
        e_min: Option<f64>,
        #[arg(long = "e-max")]
        e_max: Option<f64>,
    },
    /// Sweep N, comparing the nearest-K density estimate at E(N) = π√(2N)−2π
    /// with the logarithmic mean density.
    DensitySweep {
        #[arg(long = "n-min")]
        n_min: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        step: usize,
        #[arg(long = "K", default_value_t = 3)]
        k: usize,
    },
    /// Scaling-regime table for ℓξ = A·N^α, ℓx = B·N^{1−α}.
    Regimes {
        #[arg(long)]
        alpha: f64,
        #[arg(long = "A", default_value_t = 1.0)]
        coeff_a: f64,
        /// Comma-separated list of N values.
        #[arg(long = "n-list", value_delimiter = ',')]
        n_values: Vec<usize>,
        #[arg(long = "nu-rule", value_enum, default_value = "range")]
        nu_rule: NuRuleArg,
        /// ν for the fixed rule.
        #[arg(long, default_value_t = 1)]
        nu: i64,
    },
    /// Run the built-in invariant suite.
    Selftest {
        /// Fault-injection hook: perturbs one matrix entry so the suite
        /// must report a failure.
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = to_config(&cli);
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn to_config(cli: &Cli) -> RunConfig {
    let command = match &cli.command {
        Command::Build { n, ell_x, route } => CommandConfig::Build {
            n: *n,
            ell_x: *ell_x,
            route: (*route).into(),
        },
        Command::Spectrum { n, ell_x, symbol, route, csv } => CommandConfig::Spectrum {
            n: *n,
            ell_x: *ell_x,
            symbol: (*symbol).into(),
            route: (*route).into(),
            csv: csv.clone(),
        },
        Command::Histogram { n, ell_x, bins, e_min, e_max } => CommandConfig::Histogram {
            n: *n,
            ell_x: *ell_x,
            bins: *bins,
            e_min: *e_min,
            e_max: *e_max,
        },
        Command::DensitySweep { n_min, n_max, step, k } => CommandConfig::DensitySweep {
            n_min: *n_min,
            n_max: *n_max,
            step: *step,
            k: *k,
        },
        Command::Regimes { alpha, coeff_a, n_values, nu_rule, nu } => CommandConfig::Regimes {
            alpha: *alpha,
            coeff_a: *coeff_a,
            n_values: n_values.clone(),
            nu_rule: match nu_rule {
                NuRuleArg::Fixed => NuRule::Fixed(*nu),
                NuRuleArg::Range => NuRule::FixedSpectralRange,
                NuRuleArg::Edge => NuRule::SpectralEdge,
            },
        },
        Command::Selftest { perturb } => CommandConfig::Selftest { perturb: *perturb },
    };
    RunConfig {
        hbar: cli.hbar,
        out: cli.out.clone(),
        cache_dir: cli.cache_dir.clone(),
        tolerance: cli.tolerance,
        command,
    }
}

fn geometry_from(n: usize, ell_x: Option<f64>, hbar: f64) -> Result<LatticeGeometry> {
    match ell_x {
        Some(lx) => LatticeGeometry::new(n, lx, hbar),
        None => LatticeGeometry::symmetric(n, hbar),
    }
}

fn run(config: &RunConfig) -> Result<()> {
    match &config.command {
        CommandConfig::Build { n, ell_x, route } => cmd_build(config, *n, *ell_x, *route),
        CommandConfig::Spectrum { n, ell_x, symbol, route, csv } => {
            cmd_spectrum(config, *n, *ell_x, *symbol, *route, csv.as_deref())
        }
        CommandConfig::Histogram { n, ell_x, bins, e_min, e_max } => {
            cmd_histogram(config, *n, *ell_x, *bins, *e_min, *e_max)
        }
        CommandConfig::DensitySweep { n_min, n_max, step, k } => {
            cmd_density_sweep(config, *n_min, *n_max, *step, *k)
        }
        CommandConfig::Regimes { alpha, coeff_a, n_values, nu_rule } => {
            cmd_regimes(config, *alpha, *coeff_a, n_values, *nu_rule)
        }
        CommandConfig::Selftest { perturb } => cmd_selftest(*perturb),
    }
}

fn cmd_build(config: &RunConfig, n: usize, ell_x: Option<f64>, route: RouteChoice) -> Result<()> {
    let geometry = geometry_from(n, ell_x, config.hbar)?;
    let routes = route.routes();
    let both = routes.len() > 1;
    for r in routes {
        let op = bk::assemble(geometry, r)?;
        let real = op.to_real()?;
        let path = match (&config.out, both) {
            (Some(out), false) => out.clone(),
            (Some(out), true) => suffixed(out, r.as_str()),
            (None, _) => PathBuf::from(format!("oph_N{n}_{}.csv", r.as_str())),
        };
        io::write_matrix_csv(&path, &real)?;
        println!(
            "wrote {} ({}x{}, route {}, hermiticity defect {:.2e})",
            path.display(),
            n,
            n,
            r.as_str(),
            op.hermiticity_defect()
        );
    }
    Ok(())
}

/// Inserts a route tag before the file extension.
fn suffixed(path: &std::path::Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}

/// Cache-aware spectrum computation shared by several commands.
fn obtain_spectrum(
    config: &RunConfig,
    geometry: LatticeGeometry,
    symbol: SymbolChoice,
    route: AssemblyRoute,
) -> Result<(SpectrumDocument, bool)> {
    let cache = SpectrumCache::resolve(config.cache_dir.clone());
    let key = CacheKey::new(geometry, symbol.as_str(), route);
    match cache.lookup(&key) {
        CacheLookup::Hit(doc) => return Ok((doc, true)),
        CacheLookup::Corrupt(reason) => {
            eprintln!("warning: corrupt cache entry, recomputing ({reason})");
        }
        CacheLookup::Miss => {}
    }
    let op = match symbol {
        SymbolChoice::H => bk::assemble(geometry, route)?,
        SymbolChoice::A => {
            require_folded_route(route)?;
            weyl_quantize(&bk::a_folded_symbol(geometry))?
        }
        SymbolChoice::B => {
            require_folded_route(route)?;
            weyl_quantize(&bk::b_folded_symbol(geometry))?
        }
    };
    let want_vectors = geometry.n() <= CERTIFY_VECTORS_MAX_N;
    let cert_tol = config.tolerance.unwrap_or(eigen::CERT_TOL);
    let dec = eigen::eigendecompose_with_tolerance(&op, want_vectors, cert_tol)?;
    let doc = SpectrumDocument { symbol: symbol.as_str().into(), record: dec.record };
    cache.store(&key, &doc)?;
    Ok((doc, false))
}

fn require_folded_route(route: AssemblyRoute) -> Result<()> {
    if route != AssemblyRoute::FoldedCoefficients {
        return Err(Error::Precondition(format!(
            "symbols a and b are assembled from folded coefficients only; route {} applies to h",
            route.as_str()
        )));
    }
    Ok(())
}

fn cmd_spectrum(
    config: &RunConfig,
    n: usize,
    ell_x: Option<f64>,
    symbol: SymbolChoice,
    route: RouteChoice,
    csv: Option<&std::path::Path>,
) -> Result<()> {
    let geometry = geometry_from(n, ell_x, config.hbar)?;
    let route = route.routes()[0];
    let (doc, from_cache) = obtain_spectrum(config, geometry, symbol, route)?;
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("spectrum_{}_N{n}.json", symbol.as_str())));
    io::write_spectrum_json(&out, &doc)?;
    if let Some(csv_path) = csv {
        io::write_eigenvalues_csv(csv_path, &doc.record.eigenvalues)?;
    }
    let lo = doc.record.eigenvalues.first().copied().unwrap_or(f64::NAN);
    let hi = doc.record.eigenvalues.last().copied().unwrap_or(f64::NAN);
    println!(
        "wrote {} ({} eigenvalues in [{:.6}, {:.6}], {})",
        out.display(),
        doc.record.eigenvalues.len(),
        lo,
        hi,
        if from_cache { "cache hit" } else { "computed" }
    );
    Ok(())
}

fn cmd_histogram(
    config: &RunConfig,
    n: usize,
    ell_x: Option<f64>,
    bins: Option<usize>,
    e_min: Option<f64>,
    e_max: Option<f64>,
) -> Result<()> {
    let geometry = geometry_from(n, ell_x, config.hbar)?;
    let (doc, _) = obtain_spectrum(config, geometry, SymbolChoice::H, AssemblyRoute::FoldedCoefficients)?;
    let values = &doc.record.eigenvalues;
    let lo = e_min.unwrap_or_else(|| values.first().copied().unwrap_or(0.0));
    let hi = e_max.unwrap_or_else(|| values.last().copied().unwrap_or(1.0));
    let bins = bins.unwrap_or_else(|| HistogramSpec::default_bins(n));
    let spec = HistogramSpec::new(lo, hi, bins, Normalisation::Density)?;
    let rows: Vec<(f64, f64, f64)> = doc
        .record
        .histogram(&spec)
        .into_iter()
        .map(|(center, density)| {
            let d = semiclassics::local_density(geometry, center).unwrap_or(0.0);
            (center, density, d)
        })
        .collect();
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("histogram_N{n}.csv")));
    io::write_histogram_csv(&out, &rows)?;
    println!("wrote {} ({} bins over [{:.6}, {:.6}])", out.display(), bins, lo, hi);
    Ok(())
}

fn cmd_density_sweep(
    config: &RunConfig,
    n_min: usize,
    n_max: usize,
    step: usize,
    k: usize,
) -> Result<()> {
    if step == 0 {
        return Err(Error::Domain("step must be positive".into()));
    }
    if (config.hbar - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(
            "the density sweep uses the length-energy link, which requires hbar = 1".into(),
        ));
    }
    let n_values: Vec<usize> = (n_min..=n_max).step_by(step).collect();
    let plan = SweepPlan::new(n_values, k)?;
    let mut rows = Vec::with_capacity(plan.n_values.len());
    for &n in &plan.n_values {
        let geometry = plan.geometry(n)?;
        let (doc, from_cache) =
            obtain_spectrum(config, geometry, SymbolChoice::H, AssemblyRoute::FoldedCoefficients)?;
        let row = stats::sweep_row(&plan, n, &doc.record.eigenvalues)?;
        eprintln!(
            "N = {n}: d^{k} = {:.6}, mean density = {:.6} ({})",
            row.dk,
            row.mean_density,
            if from_cache { "cache hit" } else { "computed" }
        );
        rows.push(row);
    }
    let mut pool: Vec<f64> =
        rows.iter().filter(|r| r.n >= 500).map(|r| r.rel_deviation).collect();
    if pool.is_empty() {
        eprintln!("warning: no sweep entries with N >= 500; summarising over all entries");
        pool = rows.iter().map(|r| r.rel_deviation).collect();
    }
    let summary = pool.iter().sum::<f64>() / pool.len() as f64;
    write_sweep(config, &rows, summary, k)
}

fn write_sweep(config: &RunConfig, rows: &[stats::SweepRow], summary: f64, k: usize) -> Result<()> {
    let out = config
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("density_sweep_K{k}.csv")));
    io::write_sweep_csv(&out, rows, summary)?;
    println!(
        "wrote {} ({} rows, mean relative deviation {:.4})",
        out.display(),
        rows.len(),
        summary
    );
    Ok(())
}

fn cmd_regimes(
    config: &RunConfig,
    alpha: f64,
    coeff_a: f64,
    n_values: &[usize],
    nu_rule: NuRule,
) -> Result<()> {
    if n_values.is_empty() {
        return Err(Error::Domain("provide at least one N via --n-list".into()));
    }
    let regime = stats::ScalingRegime::new(alpha, coeff_a, config.hbar)?;
    let rows = stats::regime_sweep(&regime, n_values, nu_rule)?;
    let out = config.out.clone().unwrap_or_else(|| PathBuf::from("regimes.csv"));
    io::write_regimes_csv(&out, &rows)?;
    println!("wrote {} ({} rows)", out.display(), rows.len());
    Ok(())
}

fn cmd_selftest(perturb: f64) -> Result<()> {
    let report = run_selftest(SelfTestOptions { perturbation: perturb });
    for c in &report.checks {
        println!(
            "{} {}{}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) }
        );
    }
    if report.all_passed() {
        println!("selftest: all {} checks passed", report.checks.len());
        Ok(())
    } else {
        Err(Error::Certificate(format!(
            "selftest: {} of {} checks failed",
            report.checks.iter().filter(|c| !c.passed).count(),
            report.checks.len()
        )))
    }
}
