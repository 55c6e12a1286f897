//! Casimir force between bodies made of two different plasma-model metals.
//!
//! Covers parallel plates and a sphere above a plate through fourth-order
//! perturbation theory in the penetration depths, with finite-temperature
//! brackets and asymptotics. An exact Lifshitz evaluation for plates serves
//! as the reference.
//!
//! The numeric kernels are generic over [`Real`]; the aliases below fix the
//! scalar to `f64`, which is what the CLI and sweeps use.

pub mod constants;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod perturbation;
pub mod quadrature;
pub mod scalar;
pub mod sweep;
pub mod thermal;
pub mod warning;

pub use error::{Error, Result};
pub use materials::{MaterialRegistry, Permittivity, PERFECT_CONDUCTOR};
pub use perturbation::{Method, Order};
pub use scalar::Real;
pub use thermal::Truncation;
pub use warning::Warning;

pub type Metal = materials::Metal<f64>;
pub type MetalPair = materials::MetalPair<f64>;
pub type Geometry = perturbation::Geometry<f64>;
pub type ForceResult = perturbation::ForceResult<f64>;
pub type ThermalState = perturbation::ThermalState<f64>;
pub type SeriesValue = thermal::SeriesValue<f64>;
pub type QuadratureReport = lifshitz::QuadratureReport<f64>;
pub type ExactForce = lifshitz::ExactForce<f64>;
