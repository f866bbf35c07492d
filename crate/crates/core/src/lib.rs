//! Mellin transforms of Riesz and Weierstrass-type kernels, evaluated in
//! closed form through Ferrers functions on the cut `-1 < ξ < 1` and checked
//! against adaptive quadrature.
//!
//! The building blocks, bottom up:
//!
//! - [`special`]: complex gamma, log-gamma, digamma and reflection helpers.
//! - [`gegenbauer`]: `C^λ_j(ξ)` by recurrence, partial sums and tails of the
//!   generating function.
//! - [`kernels`]: the Riesz kernel `k_λ(u, ξ) = (1 + u² + 2uξ)^{-λ}`, its
//!   Taylor-subtracted form `h`, the geometric Weierstrass kernel and the
//!   symbolic derivatives used for integration by parts.
//! - [`legendre`]: the regularized Gauss function and Ferrers `P^μ_ν(ξ)`.
//! - [`quadrature`]: adaptive Gauss-Kronrod for complex integrands.
//! - [`mellin`]: numerical and closed-form transforms.
//! - [`verify`]: parameter sweeps comparing the two, with CSV reports.

pub mod error;
pub mod gegenbauer;
pub mod kernels;
pub mod legendre;
pub mod mellin;
pub mod quadrature;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use kernels::{CutPoint, HKernelSpec};
pub use mellin::{MellinPoint, QuadratureConfig};
pub use special::{ComplexScalar, DimensionSpec};
