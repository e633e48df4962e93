//! Content-addressed spectrum cache.
//!
//! Keys digest every input that determines a spectrum: the full geometry
//! (bit patterns of the lengths, not rounded decimals), the symbol, the
//! assembly route, and the solver version tag. Writes go through a
//! temp-file-plus-rename so parallel sweeps never read partial records.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::eigen::SOLVER_VERSION;
use crate::error::Result;
use crate::geometry::LatticeGeometry;
use crate::io::{self, SpectrumDocument};
use crate::operator::AssemblyRoute;

/// Environment variable overriding the default cache directory.
pub const CACHE_ENV_VAR: &str = "TORUSWEYL_CACHE";

const DEFAULT_CACHE_DIR: &str = ".torusweyl-cache";

/// Digest of (N, ℓx, ℓξ, ħ, symbol, assembly route, solver version).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey {
    digest: String,
}

impl CacheKey {
    pub fn new(geometry: LatticeGeometry, symbol: &str, route: AssemblyRoute) -> Self {
        let canonical = format!(
            "v1|N={}|ellx={:016x}|ellxi={:016x}|hbar={:016x}|symbol={}|route={}|solver={}",
            geometry.n(),
            geometry.ell_x().to_bits(),
            geometry.ell_xi().to_bits(),
            geometry.hbar().to_bits(),
            symbol,
            route.as_str(),
            SOLVER_VERSION,
        );
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        Self { digest }
    }

    pub fn as_str(&self) -> &str {
        &self.digest
    }
}

/// Outcome of a cache probe. Corrupt entries are surfaced so callers can
/// warn and recompute rather than fail.
#[derive(Debug)]
pub enum CacheLookup {
    Hit(SpectrumDocument),
    Miss,
    Corrupt(String),
}

/// A directory of spectrum records addressed by [`CacheKey`].
#[derive(Debug, Clone)]
pub struct SpectrumCache {
    dir: PathBuf,
}

impl SpectrumCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Resolution order: explicit directory, then `TORUSWEYL_CACHE`, then
    /// `.torusweyl-cache` in the working directory.
    pub fn resolve(explicit: Option<PathBuf>) -> Self {
        let dir = explicit
            .or_else(|| std::env::var_os(CACHE_ENV_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Self { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.as_str()))
    }

    pub fn lookup(&self, key: &CacheKey) -> CacheLookup {
        let path = self.path_for(key);
        if !path.exists() {
            return CacheLookup::Miss;
        }
        match io::read_spectrum_json(&path) {
            Ok(doc) => CacheLookup::Hit(doc),
            Err(e) => CacheLookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    pub fn store(&self, key: &CacheKey, doc: &SpectrumDocument) -> Result<()> {
        io::write_spectrum_json(&self.path_for(key), doc)
    }
}
