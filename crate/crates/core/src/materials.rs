//! Plasma-model metals and the two-metal expansion parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constants::{self, units};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A metal described by the free-electron plasma model.
///
/// Only the plasma wavelength is stored; the plasma frequency and the
/// penetration depth are derived from it on every access so the three can
/// never disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct Metal<T> {
    name: String,
    lambda_p: T,
}

impl<T: Real> Metal<T> {
    /// Builds a metal from its plasma wavelength in meters.
    pub fn new(name: impl Into<String>, lambda_p: T) -> Result<Self> {
        let name = name.into();
        if !(lambda_p > T::zero()) || !lambda_p.is_finite() {
            return Err(Error::domain(format!(
                "plasma wavelength of `{name}` must be positive and finite, got {:e} m",
                lambda_p.to_f64_lossy()
            )));
        }
        Ok(Metal { name, lambda_p })
    }

    /// Perfect conductor: the λ_p → 0 limit, with zero penetration depth and
    /// infinite permittivity at every frequency.
    pub fn perfect_conductor() -> Self {
        Metal {
            name: PERFECT_CONDUCTOR.to_string(),
            lambda_p: T::zero(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Plasma wavelength, m.
    pub fn lambda_p(&self) -> T {
        self.lambda_p
    }

    pub fn is_perfect(&self) -> bool {
        self.lambda_p == T::zero()
    }

    /// Plasma angular frequency 2πc/λ_p, rad/s. Infinite for a perfect conductor.
    pub fn omega_p(&self) -> T {
        if self.is_perfect() {
            return T::infinity();
        }
        T::TAU() * T::lit(constants::C) / self.lambda_p
    }

    /// Effective penetration depth δ = λ_p/(2π), m.
    pub fn penetration_depth(&self) -> T {
        self.lambda_p / T::TAU()
    }

    pub fn cast<U: Real>(&self) -> Metal<U> {
        Metal {
            name: self.name.clone(),
            lambda_p: U::lit(self.lambda_p.to_f64_lossy()),
        }
    }
}

impl<T: Real> fmt::Display for Metal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (λp = {} nm)", self.name, self.lambda_p.to_f64_lossy() / units::NM)
    }
}

/// Registry name of the perfect-conductor pseudo-material.
pub const PERFECT_CONDUCTOR: &str = "ideal";

pub fn make_metal<T: Real>(name: &str, lambda_p: T) -> Result<Metal<T>> {
    Metal::new(name, lambda_p)
}

/// Two metals together with the mean depth δ and asymmetry κ that the
/// perturbative formulas depend on.
#[derive(Debug, Clone, PartialEq)]
pub struct MetalPair<T> {
    metal_1: Metal<T>,
    metal_2: Metal<T>,
    delta_mean: T,
    kappa: T,
}

impl<T: Real> MetalPair<T> {
    pub fn new(metal_1: Metal<T>, metal_2: Metal<T>) -> Self {
        let d1 = metal_1.penetration_depth();
        let d2 = metal_2.penetration_depth();
        let sum = d1 + d2;
        let delta_mean = sum / T::lit(2.0);
        // Two perfect conductors: take the identical-metal limit.
        let kappa = if sum == T::zero() {
            T::lit(0.25)
        } else {
            d1 * d2 / (sum * sum)
        };
        MetalPair {
            metal_1,
            metal_2,
            delta_mean,
            kappa,
        }
    }

    pub fn metal_1(&self) -> &Metal<T> {
        &self.metal_1
    }

    pub fn metal_2(&self) -> &Metal<T> {
        &self.metal_2
    }

    /// (δ₁ + δ₂)/2, m.
    pub fn delta_mean(&self) -> T {
        self.delta_mean
    }

    /// δ₁δ₂/(δ₁ + δ₂)²; equals 1/4 for identical metals.
    pub fn kappa(&self) -> T {
        self.kappa
    }

    pub fn depths(&self) -> [T; 2] {
        [self.metal_1.penetration_depth(), self.metal_2.penetration_depth()]
    }

    /// Largest plasma wavelength of the two, m.
    pub fn max_lambda_p(&self) -> T {
        self.metal_1.lambda_p().max(self.metal_2.lambda_p())
    }

    pub fn label(&self) -> String {
        format!("{}-{}", self.metal_1.name(), self.metal_2.name())
    }

    pub fn swapped(&self) -> Self {
        MetalPair::new(self.metal_2.clone(), self.metal_1.clone())
    }

    pub fn cast<U: Real>(&self) -> MetalPair<U> {
        MetalPair::new(self.metal_1.cast(), self.metal_2.cast())
    }
}

pub fn pair_parameters<T: Real>(m1: &Metal<T>, m2: &Metal<T>) -> MetalPair<T> {
    MetalPair::new(m1.clone(), m2.clone())
}

/// Dielectric permittivity on the imaginary frequency axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity<T> {
    Finite(T),
    /// ε → ∞, reached at ξ = 0 or for a perfect conductor. Reflection
    /// coefficients take their analytic limits instead of dividing by it.
    Infinite,
}

impl<T: Real> Permittivity<T> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Permittivity::Infinite)
    }

    pub fn finite(&self) -> Option<T> {
        match *self {
            Permittivity::Finite(e) => Some(e),
            Permittivity::Infinite => None,
        }
    }
}

/// Plasma-model permittivity ε(iξ) = 1 + ω_p²/ξ².
pub fn epsilon_plasma<T: Real>(metal: &Metal<T>, xi: T) -> Result<Permittivity<T>> {
    if !(xi >= T::zero()) {
        return Err(Error::domain(format!(
            "imaginary frequency must be non-negative, got {:e}",
            xi.to_f64_lossy()
        )));
    }
    if xi == T::zero() || metal.is_perfect() {
        return Ok(Permittivity::Infinite);
    }
    let ratio = metal.omega_p() / xi;
    Ok(Permittivity::Finite(T::one() + ratio * ratio))
}

/// Expansion parameter α = ξ/ω_p = (δ/a)·x/(2p) at ξ = cx/(2pa).
pub fn alpha_parameter<T: Real>(metal: &Metal<T>, x: T, p: T, a: T) -> Result<T> {
    if !(x >= T::zero()) {
        return Err(Error::domain("x must be non-negative"));
    }
    if !(p >= T::one()) {
        return Err(Error::domain(format!("p must be at least 1, got {}", p.to_f64_lossy())));
    }
    if !(a > T::zero()) {
        return Err(Error::domain("separation must be positive"));
    }
    Ok(metal.penetration_depth() / a * x / (T::lit(2.0) * p))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct MaterialEntry {
    name: String,
    plasma_wavelength_nm: f64,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct MaterialFile {
    #[serde(default)]
    metal: Vec<MaterialEntry>,
}

/// Named metals available to sweeps: the built-ins plus any loaded from a
/// material file.
///
/// File format (TOML):
///
/// ```toml
/// [[metal]]
/// name = "Au"
/// plasma_wavelength_nm = 136
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialRegistry {
    // Keyed by lower-cased name.
    entries: BTreeMap<String, MaterialEntry>,
}

impl Default for MaterialRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl MaterialRegistry {
    pub fn empty() -> Self {
        MaterialRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Au (λ_p = 136 nm) and Cr (λ_p = 314 nm).
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.insert("Au", 136.0).expect("valid built-in");
        reg.insert("Cr", 314.0).expect("valid built-in");
        reg
    }

    pub fn insert(&mut self, name: &str, plasma_wavelength_nm: f64) -> Result<()> {
        validate_name(name)?;
        if name.eq_ignore_ascii_case(PERFECT_CONDUCTOR) {
            return Err(Error::MaterialFile(format!("`{name}` is reserved for the perfect conductor")));
        }
        Metal::new(name, plasma_wavelength_nm / units::NM_PER_M)
            .map_err(|e| Error::MaterialFile(e.to_string()))?;
        self.entries.insert(
            name.to_ascii_lowercase(),
            MaterialEntry {
                name: name.to_string(),
                plasma_wavelength_nm,
            },
        );
        Ok(())
    }

    /// Case-insensitive lookup. `ideal` always resolves to the perfect conductor.
    pub fn get(&self, name: &str) -> Result<Metal<f64>> {
        if name.eq_ignore_ascii_case(PERFECT_CONDUCTOR) {
            return Ok(Metal::perfect_conductor());
        }
        let entry = self
            .entries
            .get(&name.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownMetal(name.to_string()))?;
        Metal::new(entry.name.clone(), entry.plasma_wavelength_nm / units::NM_PER_M)
    }

    pub fn pair(&self, first: &str, second: &str) -> Result<MetalPair<f64>> {
        Ok(MetalPair::new(self.get(first)?, self.get(second)?))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.values().map(|e| e.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds (or overrides) every metal in a TOML material description.
    pub fn merge_config_str(&mut self, text: &str) -> Result<()> {
        let file: MaterialFile = toml::from_str(text).map_err(|e| Error::MaterialFile(e.to_string()))?;
        for entry in file.metal {
            self.insert(&entry.name, entry.plasma_wavelength_nm)?;
        }
        Ok(())
    }

    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut reg = Self::empty();
        reg.merge_config_str(text)?;
        Ok(reg)
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MaterialFile(format!("{}: {e}", path.display())))?;
        self.merge_config_str(&text)
    }

    pub fn to_config_string(&self) -> String {
        let file = MaterialFile {
            metal: self.entries.values().cloned().collect(),
        };
        toml::to_string(&file).expect("material entries serialize")
    }
}

fn validate_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '+');
    if ok {
        Ok(())
    } else {
        Err(Error::MaterialFile(format!(
            "invalid metal name `{name}` (letters, digits, `_`, `.`, `+` only)"
        )))
    }
}
