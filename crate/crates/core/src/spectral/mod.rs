//! Periodic pseudo-spectral engine: sampling of closed-form fields, grouped
//! fractional derivatives as Fourier multipliers, the transport and full
//! Kolmogorov operators, Parseval norms, and anisotropic dilation of field
//! specifications.
//!
//! Compactly supported data are embedded in a periodic box; every field must
//! keep its effective support inside 75% of each half-width so that the
//! coordinate multiplication inside the transport operator stays below
//! spectral accuracy.

mod fft;
mod field;
mod field_spec;
mod grid;
mod operators;
mod poly;
mod symbolic;

pub use rustfft::num_complex::Complex64;

pub use fft::{fft_all, fft_axis, Direction};
pub use field::{sample, SpectralField};
pub use field_spec::{
    dilate_spec, support_radius, FieldSpec, GaussianTerm, INPUT_DEGREE_CAP, SUPPORT_FRACTION,
    SYMBOLIC_DEGREE_CAP,
};
pub use grid::{Axis, GridSpec, Lattice, DEFAULT_BUDGET};
pub use operators::{apply_l, apply_y, derivative, frac_derivative, OperatorSpec};
pub use poly::Polynomial;
pub use symbolic::{single_term_poly, symbolic_apply, symbolic_laplace0, symbolic_y};
