//! kolmoreg: a verification laboratory for degenerate Kolmogorov operators
//! `L u = Y u - sigma * Lap_0 u` with block-triangular drift.
//!
//! The crate has four layers:
//!
//! * [`structure`] - exact rational algebra of the drift matrix: validation,
//!   the Kalman/Hormander rank check, pivot reduction, commutator expansions,
//!   the Sobolev exponent law and anisotropic dilation weights.
//! * [`spectral`] - a periodic pseudo-spectral engine: closed-form fields
//!   sampled on a space-time lattice, grouped fractional derivatives as
//!   Fourier multipliers, the transport and full operators, and an exact
//!   symbolic oracle on the polynomial-times-Gaussian class.
//! * [`verify`] - theorem-level experiments: transport and maximal-regularity
//!   estimate reports, dilation scale-invariance probes, grid-refinement
//!   studies and the exploratory two-block toy-model scan.
//! * [`cli`] - a batch front-end reading a JSON run configuration and writing
//!   CSV/JSON reports.

pub mod cli;
pub mod error;
pub mod rational;
pub mod spectral;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
