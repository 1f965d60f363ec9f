//! Spectra and eigenfunctions of PT-symmetric polynomial oscillators.
//!
//! The eigenproblem is
//!
//! ```text
//!     -u''(z) + [P(z^2) + g i z Q(z^2)] u(z) = lambda u(z)
//! ```
//!
//! with real polynomial coefficients and decay imposed along the two Stokes
//! regions containing the real axis. The canonical member of the family is
//! the imaginary cubic `-u'' + i z^3 u = lambda u`.
//!
//! The crate provides:
//!
//! * [`stokes`] — Stokes sector geometry and the `A`/`B` level-curve region
//!   decomposition of the cubic case,
//! * [`ode`] — asymptotics-based initialization and adaptive complex-path
//!   integration with logarithmic rescaling,
//! * [`spectrum`] — two-sided shooting, a Wronskian miss-distance, argument
//!   principle counting, secant refinement, and the sector/sufficient-condition
//!   checks,
//! * [`grid`], [`zeros`], [`green`], [`signs`] — eigenfunction fields on
//!   complex rectangles, zero localization, Green's-transform residuals, and
//!   sign-field/monotonicity/convexity verification,
//! * [`ortho`] — the exact bivariate polynomial family orthogonal to `|u|^2`
//!   on horizontal lines, over rational coefficients in the spectral
//!   parameters,
//! * [`report`] — JSON/CSV persistence of results.

pub mod error;
pub mod green;
pub mod grid;
pub mod ode;
pub mod ortho;
pub mod path;
pub mod potential;
pub mod report;
pub mod signs;
pub mod spectrum;
pub mod stokes;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Shorthand used throughout the crate.
pub(crate) type C64 = num_complex::Complex64;
