//! Shared numerical kernels: grids, the unitary Fourier pair, semi-axis
//! Laplace quadrature, one-sided limit extrapolation and ODE stepping.

pub mod grid;
pub mod fourier;
pub mod quad;
pub mod extrap;
pub mod ode;

pub use extrap::one_sided_limit;
pub use fourier::{fourier_forward, fourier_inverse, indicator_transform, UnitaryFourier};
pub use grid::{FrequencyGrid, TimeGrid};
pub use quad::{laplace_quadrature, LaplaceOptions};
