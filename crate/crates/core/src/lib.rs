//! Spectral-geometry laboratory: Neumann, Dirichlet, clamped-plate and
//! buckling eigenvalues on intervals, rectangles, disks, spherical caps and
//! grid-defined planar domains, together with the checks that compare them
//! (eigenvalue chains, counting functions, Weyl fits, heat traces,
//! decomposition bounds).
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`, which is what the reports use.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::{Real, Sign};
pub mod spectrum;
pub mod interval1d;
pub mod analytic2d;
pub mod fdlab;
pub mod analytics;

pub use spectrum::{DomainDescriptor, GridShape, ProblemKind, Spectrum, SpectrumSource};

pub type Spectrum64 = Spectrum<f64>;
pub type IntervalDomain64 = interval1d::IntervalDomain<f64>;
pub type RectDomain64 = analytic2d::RectDomain<f64>;
pub type DiskDomain64 = analytic2d::DiskDomain<f64>;
pub type GridDomain64 = fdlab::GridDomain<f64>;
pub type CapDomain64 = fdlab::CapDomain<f64>;
pub type SparseSymOperator64 = fdlab::SparseSymOperator<f64>;
pub type EvpSolution64 = fdlab::EvpSolution<f64>;
