//! Numerical verification of the equivalence chain
//!
//!   singularly perturbed Schroedinger dynamics
//!     -> limit unitary group with amplitude/phase jump boundary conditions
//!     -> quantum stochastic evolution on exponential vectors
//!     -> Lindblad master equation,
//!
//! built around a commuting spectral model for the system operators and a
//! truncated symmetric Fock space over a one-particle frequency grid.
//!
//! The crate is organized bottom-up:
//!
//! - [`numerics`]: unitary discrete Fourier pair with a pinned sign
//!   convention, semi-axis Laplace quadrature, one-sided limit
//!   extrapolation and adaptive ODE stepping,
//! - [`toy`]: the scalar warm-up model on `L2(R)` (shift group with a
//!   Gaussian pulse coupling and its sharp-interface limit),
//! - [`spectral`]: the spectral one-mode model, its finite-bandwidth
//!   dynamics, the four singular-coupling limits, the set-indexed unitary
//!   family and the weak stochastic differential relation,
//! - [`fock`]: truncated Fock resolvent components, jump boundary
//!   conditions, boundary operators and the symmetric generator,
//! - [`lindblad`]: finite-dimensional open systems, Heisenberg evolution
//!   and cross-validation against the dilation,
//! - [`suites`]: runnable check suites producing machine-readable reports.

pub mod error;
pub mod numerics;
pub mod toy;
pub mod profile;
pub mod spectral;
pub mod fock;
pub mod linalg;
pub mod lindblad;
pub mod report;
pub mod suites;

pub use error::CoreError;

/// Shorthand used throughout the crate.
pub type C64 = num_complex::Complex64;

/// `sqrt(2 pi)`, the normalization of the transform pair.
pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
