//! Laplace spectra of closed hyperbolic surfaces.
//!
//! Eigenvalues are computed with a stabilized method of particular solutions on
//! pants decompositions; spectral zeta values, zeta-regularized determinants and
//! completeness certificates come from the Selberg trace formula. Two smaller
//! solvers (1D Dirichlet Schrödinger problems and planar Dirichlet domains)
//! share the same machinery.
//!
//! The low level kernels (`specfun`, `ode`) are generic over [`Real`]; the
//! aliases below pin them to `f64`, which is what every pipeline uses.

pub mod cylinder_modes;
pub mod geometry;
pub mod gsvd;
pub mod ode;
pub mod planar;
mod real;
pub mod selberg;
pub mod solver1d;
pub mod specfun;
pub mod surface_mps;

pub use real::Real;

/// Quadrature contract in double precision.
pub type QuadratureSpec = specfun::QuadratureSpec<f64>;
/// Quadrature value with error estimate in double precision.
pub type Estimate = specfun::Estimate<f64>;
/// Dense piecewise-Taylor solution in double precision.
pub type TaylorSolution = ode::TaylorSolution<f64>;

/// Crate version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
