//! Fourth-order perturbative Casimir forces for two different plasma metals,
//! parallel plates and sphere (lens) above a plate, at zero and finite
//! temperature, with their low- and high-temperature asymptotics.
//!
//! All forces are attraction magnitudes (positive). Plates: N/m². Sphere: N.
//! Each result is also reported as a ratio to the ideal zero-temperature
//! force of the same geometry, split into per-order contributions in `δ/a`.

use std::fmt;

use crate::constants::{self, hbar_c};
use crate::error::{Error, Result};
use crate::materials::MetalPair;
use crate::quadrature::{self, Tolerance};
use crate::scalar::Real;
use crate::thermal;
use crate::warning::Warning;

/// Temperatures accepted by the finite-temperature formulas, K.
pub const MAX_TEMPERATURE: f64 = 1000.0;
/// `a/R` above which the proximity-force relation is flagged.
pub const PFT_ASPECT_LIMIT: f64 = 1e-2;
/// Fourth-order share of the result above which a warning is attached.
pub const FOURTH_ORDER_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry<T> {
    /// Force per unit area between two semispaces.
    Plates,
    /// Force between a sphere (lens) of the given radius, m, and a plate.
    SpherePlate { radius: T },
}

impl<T: Real> Geometry<T> {
    pub fn sphere(radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::domain("sphere radius must be positive and finite"));
        }
        Ok(Geometry::SpherePlate { radius })
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self, Geometry::SpherePlate { .. })
    }

    /// Ideal (perfect-conductor, T = 0) force at separation `a`.
    pub fn ideal_force(&self, a: T) -> Result<T> {
        match *self {
            Geometry::Plates => ideal_force_plates(a),
            Geometry::SpherePlate { radius } => ideal_force_sphere(a, radius),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Perturbative,
    Exact,
    AsymptoticLow,
    AsymptoticHigh,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Perturbative => "pert",
            Method::Exact => "exact",
            Method::AsymptoticLow => "asym-low",
            Method::AsymptoticHigh => "asym-high",
        })
    }
}

/// Truncation order of the expansion in `δ/a`, 0 through 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Order(u8);

impl Order {
    pub const MAX: Order = Order(4);

    pub fn new(order: u8) -> Result<Self> {
        if order > 4 {
            return Err(Error::Usage(format!(
                "expansion order must be 0..=4, got {order}; higher orders are not available"
            )));
        }
        Ok(Order(order))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

impl Default for Order {
    fn default() -> Self {
        Order::MAX
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Separation and temperature with `t = T_eff/T`, `k_B T_eff = ħc/(2a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState<T> {
    pub a: T,
    pub temperature: T,
    pub t_eff: T,
    /// `None` at T = 0.
    pub t: Option<T>,
}

impl<T: Real> ThermalState<T> {
    pub fn new(a: T, temperature: T) -> Result<Self> {
        check_separation(a)?;
        if !(temperature >= T::zero()) || !temperature.is_finite() {
            return Err(Error::domain("temperature must be non-negative and finite"));
        }
        let t_eff = hbar_c::<T>() / (T::lit(2.0) * a * T::lit(constants::K_B));
        let t = if temperature > T::zero() {
            Some(t_eff / temperature)
        } else {
            None
        };
        Ok(ThermalState {
            a,
            temperature,
            t_eff,
            t,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForceResult<T> {
    pub force: T,
    pub ratio_to_ideal: T,
    pub method: Method,
    pub order: Order,
    /// Contributions of orders 0..4 in `δ/a`; zero beyond `order`.
    pub per_order_terms: [T; 5],
    pub warnings: Vec<Warning>,
}

fn check_separation<T: Real>(a: T) -> Result<()> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::domain(format!(
            "separation must be positive and finite, got {:e} m",
            a.to_f64_lossy()
        )));
    }
    Ok(())
}

/// π²ħc/(240a⁴), N/m².
pub fn ideal_force_plates<T: Real>(a: T) -> Result<T> {
    check_separation(a)?;
    Ok(T::PI().powi(2) * hbar_c::<T>() / (T::lit(240.0) * a.powi(4)))
}

/// π³ħcR/(360a³), N.
pub fn ideal_force_sphere<T: Real>(a: T, radius: T) -> Result<T> {
    check_separation(a)?;
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(Error::domain("sphere radius must be positive and finite"));
    }
    Ok(T::PI().powi(3) * hbar_c::<T>() * radius / (T::lit(360.0) * a.powi(3)))
}

/// Leading coefficients of orders 0..4 for identical metals; orders 3 and 4
/// are further multiplied by the κ brackets.
const PLATES_COEFFICIENTS: [f64; 5] = [1.0, -16.0 / 3.0, 24.0, -640.0 / 7.0, 2800.0 / 9.0];
const SPHERE_COEFFICIENTS: [f64; 5] = [1.0, -4.0, 72.0 / 5.0, -320.0 / 7.0, 400.0 / 3.0];

/// `[1 − (2π²/105)(1−3κ), 1 − (326π²/3675)(1−3κ)]`. At κ = 1/4 (identical
/// metals) these are the one-metal brackets `1 − π²/210` and `1 − 163π²/7350`.
pub fn kappa_brackets<T: Real>(kappa: T) -> [T; 2] {
    let asym = T::one() - T::lit(3.0) * kappa;
    let pi2 = T::PI() * T::PI();
    [
        T::one() - T::lit(2.0) * pi2 / T::lit(105.0) * asym,
        T::one() - T::lit(326.0) * pi2 / T::lit(3675.0) * asym,
    ]
}

/// Coefficients `c_k` with ratio = Σ c_k (δ/a)^k at zero temperature.
pub fn coefficients<T: Real>(sphere: bool, kappa: T) -> [T; 5] {
    let base = if sphere { SPHERE_COEFFICIENTS } else { PLATES_COEFFICIENTS };
    let [b3, b4] = kappa_brackets(kappa);
    [T::lit(base[0]), T::lit(base[1]), T::lit(base[2]), T::lit(base[3]) * b3, T::lit(base[4]) * b4]
}

fn zero_temperature_terms<T: Real>(sphere: bool, d: T, kappa: T) -> [T; 5] {
    let c = coefficients(sphere, kappa);
    [c[0], c[1] * d, c[2] * d * d, c[3] * d.powi(3), c[4] * d.powi(4)]
}

fn base_warnings<T: Real>(a: T, pair: &MetalPair<T>, geometry: &Geometry<T>) -> Vec<Warning> {
    let mut warnings = Vec::new();
    if a < pair.max_lambda_p() {
        warnings.push(Warning::BelowPlasmaWavelength {
            separation: a.to_f64_lossy(),
            lambda_p: pair.max_lambda_p().to_f64_lossy(),
        });
    }
    if let Geometry::SpherePlate { radius } = *geometry {
        let ratio = (a / radius).to_f64_lossy();
        if ratio > PFT_ASPECT_LIMIT {
            warnings.push(Warning::ProximityAspect { ratio });
        }
    }
    warnings
}

fn assemble<T: Real>(
    a: T,
    pair: &MetalPair<T>,
    geometry: Geometry<T>,
    mut terms: [T; 5],
    method: Method,
    order: Order,
) -> Result<ForceResult<T>> {
    for term in terms.iter_mut().skip(order.get() + 1) {
        *term = T::zero();
    }
    let ratio = terms.iter().fold(T::zero(), |s, &v| s + v);
    let mut warnings = base_warnings(a, pair, &geometry);
    if order.get() == 4 && ratio != T::zero() {
        let fraction = (terms[4] / ratio).abs().to_f64_lossy();
        if fraction > FOURTH_ORDER_LIMIT {
            warnings.push(Warning::FourthOrderLarge { fraction });
        }
    }
    Ok(ForceResult {
        force: ratio * geometry.ideal_force(a)?,
        ratio_to_ideal: ratio,
        method,
        order,
        per_order_terms: terms,
        warnings,
    })
}

fn check_temperature<T: Real>(temperature: T) -> Result<()> {
    if !(temperature >= T::zero()) || temperature > T::lit(MAX_TEMPERATURE) {
        return Err(Error::validity(format!(
            "temperature {} K is outside the supported range 0..={MAX_TEMPERATURE} K",
            temperature.to_f64_lossy()
        )));
    }
    Ok(())
}

/// Dimensionless `t`, requiring `T > 0`.
fn thermal_t<T: Real>(a: T, temperature: T) -> Result<T> {
    check_temperature(temperature)?;
    ThermalState::new(a, temperature)?
        .t
        .ok_or_else(|| Error::validity("asymptotic forms need a positive temperature"))
}

pub fn force_plates_pert_t0<T: Real>(a: T, pair: &MetalPair<T>, order: Order) -> Result<ForceResult<T>> {
    check_separation(a)?;
    let terms = zero_temperature_terms(false, pair.delta_mean() / a, pair.kappa());
    assemble(a, pair, Geometry::Plates, terms, Method::Perturbative, order)
}

/// Plates at temperature `T`: the zeroth- and first-order coefficients carry
/// the thermal brackets, orders 2–4 are temperature independent.
pub fn force_plates_pert_t<T: Real>(a: T, pair: &MetalPair<T>, temperature: T, order: Order) -> Result<ForceResult<T>> {
    check_separation(a)?;
    check_temperature(temperature)?;
    if temperature == T::zero() {
        return force_plates_pert_t0(a, pair, order);
    }
    let t = thermal_t(a, temperature)?;
    let d = pair.delta_mean() / a;
    let mut terms = zero_temperature_terms(false, d, pair.kappa());
    terms[0] = T::one() + thermal::plates_s0(t)?.value;
    terms[1] = -T::lit(2.0) * d * (T::lit(8.0 / 3.0) - thermal::plates_s1(t)?.value);
    assemble(a, pair, Geometry::Plates, terms, Method::Perturbative, order)
}

fn require_low<T: Real>(t: T) -> Result<()> {
    if !(t > T::one()) {
        return Err(Error::validity(format!(
            "low-temperature asymptote needs t = T_eff/T > 1, got {:.4}",
            t.to_f64_lossy()
        )));
    }
    Ok(())
}

fn require_high<T: Real>(t: T) -> Result<()> {
    if !(t < T::one()) {
        return Err(Error::validity(format!(
            "high-temperature asymptote needs t = T_eff/T < 1, got {:.4}",
            t.to_f64_lossy()
        )));
    }
    Ok(())
}

/// Low-temperature (`t ≫ 1`) plates asymptote. At T = 0 it is the
/// zero-temperature result.
pub fn force_plates_asym_low<T: Real>(a: T, pair: &MetalPair<T>, temperature: T, order: Order) -> Result<ForceResult<T>> {
    check_separation(a)?;
    check_temperature(temperature)?;
    let d = pair.delta_mean() / a;
    let mut terms = zero_temperature_terms(false, d, pair.kappa());
    if temperature > T::zero() {
        let t = thermal_t(a, temperature)?;
        require_low(t)?;
        let z = T::lit(15.0) * thermal::zeta3::<T>() / (T::PI().powi(3) * t.powi(3));
        terms[0] = T::one() + T::one() / (T::lit(3.0) * t.powi(4));
        terms[1] = -T::lit(2.0) * d * (T::lit(8.0 / 3.0) - z);
    }
    assemble(a, pair, Geometry::Plates, terms, Method::AsymptoticLow, order)
}

/// High-temperature (`t ≪ 1`) plates asymptote `30ζ(3)/(π³t)·(1 − 3δ/a)`.
pub fn force_plates_asym_high<T: Real>(a: T, pair: &MetalPair<T>, temperature: T, order: Order) -> Result<ForceResult<T>> {
    check_separation(a)?;
    let t = thermal_t(a, temperature)?;
    require_high(t)?;
    let lead = T::lit(30.0) * thermal::zeta3::<T>() / (T::PI().powi(3) * t);
    let d = pair.delta_mean() / a;
    let terms = [lead, -T::lit(3.0) * d * lead, T::zero(), T::zero(), T::zero()];
    assemble(a, pair, Geometry::Plates, terms, Method::AsymptoticHigh, order)
}

pub fn force_sphere_pert_t0<T: Real>(a: T, radius: T, pair: &MetalPair<T>, order: Order) -> Result<ForceResult<T>> {
    check_separation(a)?;
    let geometry = Geometry::sphere(radius)?;
    let terms = zero_temperature_terms(true, pair.delta_mean() / a, pair.kappa());
    assemble(a, pair, geometry, terms, Method::Perturbative, order)
}

pub fn force_sphere_pert_t<T: Real>(
    a: T,
    radius: T,
    pair: &MetalPair<T>,
    temperature: T,
    order: Order,
) -> Result<ForceResult<T>> {
    check_separation(a)?;
    let geometry = Geometry::sphere(radius)?;
    check_temperature(temperature)?;
    if temperature == T::zero() {
        return force_sphere_pert_t0(a, radius, pair, order);
    }
    let t = thermal_t(a, temperature)?;
    let d = pair.delta_mean() / a;
    let mut terms = zero_temperature_terms(true, d, pair.kappa());
    terms[0] = T::one() + thermal::sphere_q0(t)?.value;
    terms[1] = -T::lit(2.0) * d * (T::lit(2.0) - thermal::sphere_q1(t)?.value);
    assemble(a, pair, geometry, terms, Method::Perturbative, order)
}

pub fn force_sphere_asym_low<T: Real>(
    a: T,
    radius: T,
    pair: &MetalPair<T>,
    temperature: T,
    order: Order,
) -> Result<ForceResult<T>> {
    check_separation(a)?;
    let geometry = Geometry::sphere(radius)?;
    check_temperature(temperature)?;
    let d = pair.delta_mean() / a;
    let mut terms = zero_temperature_terms(true, d, pair.kappa());
    if temperature > T::zero() {
        let t = thermal_t(a, temperature)?;
        require_low(t)?;
        let z = T::lit(45.0) * thermal::zeta3::<T>() / (T::PI().powi(3) * t.powi(3));
        let inv_t4 = T::one() / t.powi(4);
        terms[0] = T::one() + z - inv_t4;
        terms[1] = -T::lit(2.0) * d * (T::lit(2.0) - z + T::lit(2.0) * inv_t4);
    }
    assemble(a, pair, geometry, terms, Method::AsymptoticLow, order)
}

/// High-temperature sphere asymptote `45ζ(3)/(π³t)·(1 − 2δ/a)`.
pub fn force_sphere_asym_high<T: Real>(
    a: T,
    radius: T,
    pair: &MetalPair<T>,
    temperature: T,
    order: Order,
) -> Result<ForceResult<T>> {
    check_separation(a)?;
    let geometry = Geometry::sphere(radius)?;
    let t = thermal_t(a, temperature)?;
    require_high(t)?;
    let lead = T::lit(45.0) * thermal::zeta3::<T>() / (T::PI().powi(3) * t);
    let d = pair.delta_mean() / a;
    let terms = [lead, -T::lit(2.0) * d * lead, T::zero(), T::zero(), T::zero()];
    assemble(a, pair, geometry, terms, Method::AsymptoticHigh, order)
}

/// Upper limit of the numerical energy integral, in units of `a`.
const PFT_CUTOFF: f64 = 100.0;

/// Relative difference between `2πR·E(a)` and the sphere-plate result at
/// T = 0, where `E(a) = ∫_a^∞ F_plates` is integrated numerically up to
/// `100a` and in closed form beyond. Independent of `R`.
pub fn pft_consistency_check<T: Real>(a: T, radius: T, pair: &MetalPair<T>) -> Result<T> {
    check_separation(a)?;
    Geometry::sphere(radius)?;
    let cutoff = a * T::lit(PFT_CUTOFF);
    let panels = 16;
    let points: Vec<T> = (0..=panels)
        .map(|i| a * T::lit(PFT_CUTOFF).powf(T::lit(i as f64 / panels as f64)))
        .collect();
    let mut failure = None;
    let body = quadrature::integrate(
        |s: T| match force_plates_pert_t0(s, pair, Order::MAX) {
            Ok(r) => r.force,
            Err(e) => {
                failure.get_or_insert(e);
                T::nan()
            }
        },
        &points,
        Tolerance::relative(T::lit(1e-13)),
        500,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let body = body?;

    // ∫_A^∞ c_k δ^k K / s^{4+k} ds = c_k δ^k K / ((3+k) A^{3+k}).
    let k_ideal = T::PI().powi(2) * hbar_c::<T>() / T::lit(240.0);
    let c = coefficients(false, pair.kappa());
    let delta = pair.delta_mean();
    let tail = (0..5).fold(T::zero(), |sum, k| {
        let power = (3 + k) as i32;
        sum + c[k] * delta.powi(k as i32) * k_ideal / (T::lit(power as f64) * cutoff.powi(power))
    });

    let energy = body.value + tail;
    let sphere = force_sphere_pert_t0(a, radius, pair, Order::MAX)?.force;
    Ok((T::TAU() * radius * energy - sphere) / sphere)
}
