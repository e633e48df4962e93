//! Typed run configuration with a canonical JSON form.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::AssemblyRoute;
use crate::stats::NuRule;

/// Which symbol a spectrum command operates on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolChoice {
    H,
    A,
    B,
}

impl SymbolChoice {
    pub fn as_str(&self) -> &'static str {
        match self {
            SymbolChoice::H => "h",
            SymbolChoice::A => "a",
            SymbolChoice::B => "b",
        }
    }
}

/// Route selection on the command line; `Both` emits both assemblies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RouteChoice {
    AppendixB,
    Finite,
    Both,
}

impl RouteChoice {
    pub fn routes(&self) -> Vec<AssemblyRoute> {
        match self {
            RouteChoice::AppendixB => vec![AssemblyRoute::FoldedCoefficients],
            RouteChoice::Finite => vec![AssemblyRoute::FiniteSumForm],
            RouteChoice::Both => {
                vec![AssemblyRoute::FoldedCoefficients, AssemblyRoute::FiniteSumForm]
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum CommandConfig {
    Build {
        n: usize,
        ell_x: Option<f64>,
        route: RouteChoice,
    },
    Spectrum {
        n: usize,
        ell_x: Option<f64>,
        symbol: SymbolChoice,
        route: RouteChoice,
        csv: Option<PathBuf>,
    },
    Histogram {
        n: usize,
        ell_x: Option<f64>,
        bins: Option<usize>,
        e_min: Option<f64>,
        e_max: Option<f64>,
    },
    DensitySweep {
        n_min: usize,
        n_max: usize,
        step: usize,
        k: usize,
    },
    Regimes {
        alpha: f64,
        coeff_a: f64,
        n_values: Vec<usize>,
        nu_rule: NuRule,
    },
    Selftest {
        perturb: f64,
    },
}

/// Full run configuration: global parameters plus the command payload.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub hbar: f64,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    /// Optional override of the certificate tolerance scale.
    pub tolerance: Option<f64>,
    #[serde(flatten)]
    pub command: CommandConfig,
}

impl RunConfig {
    /// Canonical JSON rendering; parsing it back yields an equal value and
    /// re-serialising reproduces the same bytes.
    pub fn to_canonical_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Parse(format!("serialise: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("deserialise: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_json_round_trip() {
        let configs = vec![
            RunConfig {
                hbar: 1.0,
                out: Some(PathBuf::from("out.csv")),
                cache_dir: None,
                tolerance: None,
                command: CommandConfig::Build { n: 4, ell_x: None, route: RouteChoice::Both },
            },
            RunConfig {
                hbar: 0.5,
                out: None,
                cache_dir: Some(PathBuf::from("/tmp/cache")),
                tolerance: Some(1e-8),
                command: CommandConfig::Spectrum {
                    n: 64,
                    ell_x: Some(3.25),
                    symbol: SymbolChoice::A,
                    route: RouteChoice::AppendixB,
                    csv: None,
                },
            },
            RunConfig {
                hbar: 1.0,
                out: None,
                cache_dir: None,
                tolerance: None,
                command: CommandConfig::Regimes {
                    alpha: 0.5,
                    coeff_a: 1.0,
                    n_values: vec![16, 64],
                    nu_rule: NuRule::Fixed(1),
                },
            },
        ];
        for config in configs {
            let text = config.to_canonical_json().unwrap();
            let back = RunConfig::from_json(&text).unwrap();
            assert_eq!(config, back);
            assert_eq!(text, back.to_canonical_json().unwrap());
        }
    }
}
