//! Weyl quantisation of the inverted harmonic oscillator on a torus
//! phase space.
//!
//! The classical Hamiltonian h(x,ξ) = (ξ²−x²)/2 is periodised over the
//! lattice ℓxℤ ⊕ ℓξℤ and quantised on ℂᴺ, where the dimension N is tied to
//! the torus area by 2πħN = ℓξ·ℓx. The crate builds the resulting lattice
//! operators, diagonalises them with certified residuals, and compares the
//! empirical spectral statistics against exact plane-wave spectra and the
//! semiclassical (periodic-orbit) density predictions, including the
//! energy-linked length choice that produces a logarithmic mean density.
//!
//! Entry points by theme:
//!
//! * [`geometry::LatticeGeometry`] — the (N, ℓx, ℓξ, ħ) tuple;
//! * [`translation`], [`state`] — translation operators and the DFT;
//! * [`symbol`] — generic Fourier symbols, folding, Weyl quantisation;
//! * [`bk`] — the h, a, b symbols, dual matrix assemblies, exact spectra;
//! * [`eigen`] — dense symmetric eigensolver with residual certificates;
//! * [`semiclassics`] — actions, periods, densities, the length–energy link;
//! * [`stats`] — histograms, the nearest-K density estimator, sweeps;
//! * [`cache`], [`io`] — spectrum cache and CSV/JSON persistence.
//!
//! The `examples/` directory exercises each capability end to end; the thin
//! `torusweyl` binary exposes the same operations as subcommands.

pub mod bk;
pub mod cache;
pub mod config;
pub mod error;
pub mod eigen;
pub mod geometry;
pub mod io;
pub mod operator;
pub mod selftest;
pub mod semiclassics;
pub mod state;
pub mod stats;
pub mod symbol;
pub mod translation;

pub use error::{Error, Result};
pub use geometry::{LatticeGeometry, REL_TOL};
pub use operator::{AssemblyRoute, QuantumOperator};
pub use state::StateVector;
pub use symbol::TorusSymbol;
