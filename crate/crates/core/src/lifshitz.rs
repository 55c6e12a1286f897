//! Direct evaluation of the Lifshitz force between two plasma-model
//! semispaces, at zero temperature (double integral over `x` and `p`) and
//! at finite temperature (Matsubara sum with a wave-vector integral).
//!
//! Both reflection coefficients are written in the dimensionless variables
//! `β = qδ` (wave number across the gap times penetration depth) and
//! `α = ξ/ω_p`. With `q = x/(2a)` and `ξ = cx/(2pa)`:
//!
//! ```text
//! r_TE = 1/(√(1+β²) + β)²                   (depends on β only)
//! r_TM = (1 − g)/(1 + g),  g = √(1+β²)·α/(p(1+α²))
//! ```
//!
//! The zero-frequency Matsubara term is the `α = 0` case of the same
//! formulas: `r_TM = 1`, and `r_TE` keeps its finite plasma-model value.
//!
//! The force per Matsubara term uses `X₁ + X₂` (TM + TE). The printed
//! finite-temperature formula this follows repeats `X₁` twice, which is
//! read as a misprint of the zero-temperature integrand.

use std::cell::Cell;

use crate::constants::{self, hbar_c};
use crate::error::{Error, Result};
use crate::materials::{epsilon_plasma, MetalPair, Permittivity};
use crate::perturbation::ideal_force_plates;
use crate::quadrature::{self, Tolerance};
use crate::scalar::Real;
use crate::warning::Warning;

/// Relative tolerance of the zero-temperature double integral.
pub const T0_REL_TOL: f64 = 1e-10;
/// A Matsubara sum stops once its estimated remaining tail is below this
/// fraction of the accumulated sum.
pub const MATSUBARA_REL_TOL: f64 = 1e-10;
const MATSUBARA_MAX_TERMS: usize = 50_000_000;
const MAX_SUBDIVISIONS: usize = 400;

/// A reflection amplitude together with `1 − r`, carried separately so that
/// products close to one keep their precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection<T> {
    pub r: T,
    pub one_minus_r: T,
}

impl<T: Real> Reflection<T> {
    pub fn perfect() -> Self {
        Reflection {
            r: T::one(),
            one_minus_r: T::zero(),
        }
    }

    fn product(self, other: Self) -> Self {
        Reflection {
            r: self.r * other.r,
            one_minus_r: self.one_minus_r + other.one_minus_r - self.one_minus_r * other.one_minus_r,
        }
    }

    /// `r e^{-x} / (1 − r e^{-x})`, one term of the Lifshitz integrand.
    fn round_trip(self, x: T) -> T {
        self.r / (x.exp_m1() + self.one_minus_r)
    }
}

/// TE reflection of a plasma metal at `β = qδ`.
pub fn reflection_te<T: Real>(beta: T) -> Reflection<T> {
    let s = (T::one() + beta * beta).sqrt() + beta;
    Reflection {
        r: T::one() / (s * s),
        one_minus_r: T::lit(2.0) * beta / s,
    }
}

/// TM reflection of a plasma metal at `β = qδ`, `α = ξ/ω_p` and `1/p = ξ/(cq)`.
pub fn reflection_tm<T: Real>(beta: T, alpha: T, inv_p: T) -> Reflection<T> {
    let g = (T::one() + beta * beta).sqrt() * alpha * inv_p / (T::one() + alpha * alpha);
    let d = T::one() + g;
    Reflection {
        r: (T::one() - g) / d,
        one_minus_r: T::lit(2.0) * g / d,
    }
}

fn reflections_from_permittivity<T: Real>(p: T, eps: Permittivity<T>) -> Result<(Reflection<T>, Reflection<T>)> {
    match eps {
        Permittivity::Infinite => Ok((Reflection::perfect(), Reflection::perfect())),
        Permittivity::Finite(e) => {
            if !(e >= T::one()) || !e.is_finite() {
                return Err(Error::domain(format!(
                    "permittivity on the imaginary axis must be finite and ≥ 1, got {}",
                    e.to_f64_lossy()
                )));
            }
            let two = T::lit(2.0);
            let w = e - T::one();
            let s = (w + p * p).sqrt();
            let te = Reflection {
                r: w / ((s + p) * (s + p)),
                one_minus_r: two * p / (s + p),
            };
            let u = T::one() / e;
            let su = s * u;
            let tm = Reflection {
                r: (T::one() - u) * (p * p * (T::one() + u) - u) / ((p + su) * (p + su)),
                one_minus_r: two * su / (p + su),
            };
            Ok((tm, te))
        }
    }
}

/// The TM and TE brackets `(X₁, X₂)` of the Lifshitz integrand at `(p, x)`
/// for the given imaginary-frequency permittivities of the two metals.
pub fn integrand_x<T: Real>(p: T, x: T, eps_1: Permittivity<T>, eps_2: Permittivity<T>) -> Result<(T, T)> {
    if !(p >= T::one()) {
        return Err(Error::domain(format!("p must be at least 1, got {}", p.to_f64_lossy())));
    }
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("x must be positive; the x = 0 endpoint belongs to the quadrature"));
    }
    let (tm1, te1) = reflections_from_permittivity(p, eps_1)?;
    let (tm2, te2) = reflections_from_permittivity(p, eps_2)?;
    Ok((tm1.product(tm2).round_trip(x), te1.product(te2).round_trip(x)))
}

/// One sample point of the zero-temperature integrand.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandPoint<T> {
    pub p: T,
    pub x: T,
    pub eps: [Permittivity<T>; 2],
    /// `s_k = √(ε_k − 1 + p²)`; `None` where ε is infinite.
    pub s: [Option<T>; 2],
}

impl<T: Real> IntegrandPoint<T> {
    /// Evaluates the plasma permittivities of `pair` at `ξ = cx/(2pa)`.
    pub fn plasma(pair: &MetalPair<T>, a: T, p: T, x: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(Error::domain("separation must be positive"));
        }
        if !(p >= T::one()) || !(x >= T::zero()) {
            return Err(Error::domain("need p ≥ 1 and x ≥ 0"));
        }
        let xi = T::lit(constants::C) * x / (T::lit(2.0) * p * a);
        let eps = [epsilon_plasma(pair.metal_1(), xi)?, epsilon_plasma(pair.metal_2(), xi)?];
        let s = eps.map(|e| e.finite().map(|e| (e - T::one() + p * p).sqrt()));
        Ok(IntegrandPoint { p, x, eps, s })
    }

    pub fn x_values(&self) -> Result<(T, T)> {
        integrand_x(self.p, self.x, self.eps[0], self.eps[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport<T> {
    pub value: T,
    pub abs_error_estimate: T,
    pub subdivisions: usize,
    /// Matsubara terms summed; zero for zero-temperature evaluations.
    pub matsubara_terms_used: usize,
}

/// Result of an exact evaluation: the force per unit area (attraction
/// positive, N/m²) with its numerical diagnostics, and the ratio to the
/// ideal zero-temperature force.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactForce<T> {
    pub report: QuadratureReport<T>,
    pub ratio_to_ideal: T,
    pub warnings: Vec<Warning>,
}

fn check_separation<T: Real>(a: T, pair: &MetalPair<T>) -> Result<Vec<Warning>> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::domain("separation must be positive and finite"));
    }
    let mut warnings = Vec::new();
    if a < pair.max_lambda_p() {
        warnings.push(Warning::BelowPlasmaWavelength {
            separation: a.to_f64_lossy(),
            lambda_p: pair.max_lambda_p().to_f64_lossy(),
        });
    }
    Ok(warnings)
}

/// Half penetration depths over the separation, `δ_k/(2a)`, so that `β_k = x·h_k`.
fn half_depth_ratios<T: Real>(a: T, pair: &MetalPair<T>) -> [T; 2] {
    pair.depths().map(|d| d / (T::lit(2.0) * a))
}

/// Ratio of the zero-temperature Lifshitz force to `π²ħc/(240a⁴)`.
///
/// With `u = 1/p` the `p` integral runs over `(0, 1]`; the TE bracket does
/// not depend on `p` and integrates to itself.
pub fn ratio_plates_exact_t0<T: Real>(a: T, pair: &MetalPair<T>) -> Result<QuadratureReport<T>> {
    check_separation(a, pair)?;
    let h = half_depth_ratios(a, pair);
    let inner_tol = Tolerance::new(T::lit(T0_REL_TOL * 0.1), T::lit(1e-300));
    let inner_failed = Cell::new(false);
    let inner_subdivisions = Cell::new(0usize);

    let integrand = |x: T| -> T {
        if x == T::zero() {
            return T::zero();
        }
        let b = [x * h[0], x * h[1]];
        let te = reflection_te(b[0]).product(reflection_te(b[1])).round_trip(x);
        let tm = quadrature::adaptive(
            |u: T| {
                let r1 = reflection_tm(b[0], b[0] * u, u);
                let r2 = reflection_tm(b[1], b[1] * u, u);
                r1.product(r2).round_trip(x)
            },
            &[T::zero(), T::one()],
            inner_tol,
            MAX_SUBDIVISIONS,
        );
        if !tm.converged {
            inner_failed.set(true);
        }
        inner_subdivisions.set(inner_subdivisions.get() + tm.subdivisions);
        x * x * x * (te + tm.value)
    };

    let points: Vec<T> = [0.0, 0.5, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0, 70.0].iter().map(|&v| T::lit(v)).collect();
    let outer = quadrature::adaptive(integrand, &points, Tolerance::relative(T::lit(T0_REL_TOL)), MAX_SUBDIVISIONS);
    let scale = T::lit(15.0) / (T::lit(2.0) * T::PI().powi(4));
    let value = outer.value * scale;
    if !outer.converged || inner_failed.get() {
        return Err(Error::numeric("zero-temperature Lifshitz integral did not converge", value.to_f64_lossy()));
    }
    Ok(QuadratureReport {
        value,
        abs_error_estimate: outer.abs_error * scale,
        subdivisions: outer.subdivisions + inner_subdivisions.get(),
        matsubara_terms_used: 0,
    })
}

/// Exact zero-temperature force per unit area between two plasma metals.
pub fn force_plates_exact_t0<T: Real>(a: T, pair: &MetalPair<T>) -> Result<ExactForce<T>> {
    let warnings = check_separation(a, pair)?;
    let ratio = ratio_plates_exact_t0(a, pair)?;
    Ok(scale_to_force(a, ratio, warnings))
}

fn scale_to_force<T: Real>(a: T, ratio: QuadratureReport<T>, warnings: Vec<Warning>) -> ExactForce<T> {
    let ideal = ideal_force_plates(a).expect("separation already validated");
    ExactForce {
        report: QuadratureReport {
            value: ratio.value * ideal,
            abs_error_estimate: ratio.abs_error_estimate * ideal,
            ..ratio
        },
        ratio_to_ideal: ratio.value,
        warnings,
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy)]
struct Accumulator<T> {
    sum: T,
    carry: T,
}

impl<T: Real> Accumulator<T> {
    fn new() -> Self {
        Accumulator {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry = self.carry + ((self.sum - t) + v);
        } else {
            self.carry = self.carry + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// Ratio of the finite-temperature Lifshitz force to `π²ħc/(240a⁴)`.
///
/// `ratio = (15/(π³t)) Σ'_l ∫_{x_l}^∞ x² [X_TM + X_TE] dx` with
/// `x_l = 2πl/t`, `t = ħc/(2a k_B T)`, and the `l = 0` term at half weight.
pub fn ratio_plates_exact_t<T: Real>(a: T, pair: &MetalPair<T>, temperature: T) -> Result<QuadratureReport<T>> {
    check_separation(a, pair)?;
    if !(temperature > T::zero()) || !temperature.is_finite() {
        return Err(Error::domain("temperature must be positive for a Matsubara sum"));
    }
    let t = hbar_c::<T>() / (T::lit(2.0) * a * T::lit(constants::K_B) * temperature);
    let h = half_depth_ratios(a, pair);
    let step = T::TAU() / t;
    let term_tol = Tolerance::new(T::lit(MATSUBARA_REL_TOL * 0.1), T::lit(1e-300));
    let offsets: Vec<T> = [0.0, 0.5, 2.0, 5.0, 10.0, 18.0, 40.0].iter().map(|&v| T::lit(v)).collect();
    let tol = T::lit(MATSUBARA_REL_TOL);

    let mut sum = Accumulator::new();
    let mut error = T::zero();
    let mut subdivisions = 0;
    let mut previous = T::zero();

    for l in 0..MATSUBARA_MAX_TERMS {
        let x_l = step * T::from_usize_lossy(l);
        let alpha = [x_l * h[0], x_l * h[1]];
        let points: Vec<T> = offsets.iter().map(|&o| x_l + o).collect();
        let term = quadrature::adaptive(
            |x: T| {
                if x == T::zero() {
                    return T::zero();
                }
                let b = [x * h[0], x * h[1]];
                let inv_p = x_l / x;
                let te = reflection_te(b[0]).product(reflection_te(b[1]));
                let tm = reflection_tm(b[0], alpha[0], inv_p).product(reflection_tm(b[1], alpha[1], inv_p));
                x * x * (te.round_trip(x) + tm.round_trip(x))
            },
            &points,
            term_tol,
            MAX_SUBDIVISIONS,
        );
        let prefactor = T::lit(15.0) / (T::PI().powi(3) * t);
        if !term.converged {
            return Err(Error::numeric(
                format!("Matsubara term l = {l} did not converge"),
                (prefactor * sum.value()).to_f64_lossy(),
            ));
        }
        let weight = if l == 0 { T::lit(0.5) } else { T::one() };
        sum.add(weight * term.value);
        error = error + weight * term.abs_error;
        subdivisions += term.subdivisions;

        if l >= 1 {
            let ratio = term.value / previous;
            if ratio < T::one() {
                let tail = term.value * ratio / (T::one() - ratio);
                if tail <= tol * sum.value() {
                    return Ok(QuadratureReport {
                        value: prefactor * sum.value(),
                        abs_error_estimate: prefactor * (error + tail),
                        subdivisions,
                        matsubara_terms_used: l + 1,
                    });
                }
            }
        }
        previous = term.value;
    }
    Err(Error::numeric(
        format!("Matsubara sum not converged after {MATSUBARA_MAX_TERMS} terms"),
        (T::lit(15.0) / (T::PI().powi(3) * t) * sum.value()).to_f64_lossy(),
    ))
}

/// Exact finite-temperature force per unit area between two plasma metals.
pub fn force_plates_exact_t<T: Real>(a: T, pair: &MetalPair<T>, temperature: T) -> Result<ExactForce<T>> {
    let warnings = check_separation(a, pair)?;
    let ratio = ratio_plates_exact_t(a, pair, temperature)?;
    Ok(scale_to_force(a, ratio, warnings))
}

/// Exact TM and TE brackets minus their fourth-order expansions in
/// `α₁, α₂`, at `A = eˣ/(eˣ − 1)`. The exact side is evaluated with
/// `ε_k = 1 + 1/α_k²`, so the remainder is `O(α⁵)`.
pub fn expansion_residual<T: Real>(p: T, x: T, alpha_1: T, alpha_2: T) -> Result<(T, T)> {
    if !(p >= T::one()) {
        return Err(Error::domain("p must be at least 1"));
    }
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("x must be positive"));
    }
    for alpha in [alpha_1, alpha_2] {
        if !(alpha >= T::zero()) || alpha >= T::one() {
            return Err(Error::domain(format!(
                "expansion parameter must lie in [0, 1), got {}",
                alpha.to_f64_lossy()
            )));
        }
    }
    let inv_p = T::one() / p;
    let tm = reflection_tm(p * alpha_1, alpha_1, inv_p).product(reflection_tm(p * alpha_2, alpha_2, inv_p));
    let te = reflection_te(p * alpha_1).product(reflection_te(p * alpha_2));
    let (s1, s2) = expansion_fourth_order(p, x, alpha_1, alpha_2);
    Ok((tm.round_trip(x) - s1, te.round_trip(x) - s2))
}

/// Fourth-order expansions of the TM and TE brackets in the two small
/// parameters.
pub fn expansion_fourth_order<T: Real>(p: T, x: T, a1: T, a2: T) -> (T, T) {
    let n = |v: f64| T::lit(v);
    let one = T::one();
    let em1 = x.exp_m1();
    let pre = one / em1;
    let big_a = (em1 + one) / em1;
    let a_sq = big_a * big_a;
    let two_a_m1 = n(2.0) * big_a - one;

    let s = a1 + a2;
    let cubes = a1.powi(3) + a2.powi(3);
    let m21 = a1 * a1 * a2 + a1 * a2 * a2;
    let quarts = a1.powi(4) + a2.powi(4);
    let m31 = a1.powi(3) * a2 + a1 * a2.powi(3);
    let m22 = a1 * a1 * a2 * a2;
    let p2 = p * p;
    let p3 = p2 * p;
    let p4 = p2 * p2;

    let tm = one - n(2.0) * big_a / p * s + n(2.0) * big_a / p2 * two_a_m1 * s * s
        - big_a / p3 * (n(2.0) - n(8.0) * big_a + n(8.0) * a_sq - n(2.0) * p2 + p4) * cubes
        - n(4.0) * big_a / p3 * (one - n(6.0) * big_a + n(6.0) * a_sq) * m21
        + n(2.0) * big_a * two_a_m1 / p4 * (two_a_m1 * two_a_m1 - n(2.0) * p2 + p4) * quarts
        + n(2.0) * big_a * two_a_m1 / p4 * (n(2.0) - n(16.0) * big_a + n(16.0) * a_sq - n(2.0) * p2 + p4) * m31
        + n(4.0) * big_a * two_a_m1 / p4 * (one - n(12.0) * big_a + n(12.0) * a_sq) * m22;

    // The α₁⁴ + α₂⁴ coefficient is 8A²p⁴(1 − 3A + 2A²) = 8A²p⁴(A − 1)(2A − 1).
    let te = one - n(2.0) * big_a * p * s + n(2.0) * big_a * p2 * two_a_m1 * s * s
        - big_a * p3 * (one - n(8.0) * big_a + n(8.0) * a_sq) * cubes
        - n(4.0) * big_a * p3 * (one - n(6.0) * big_a + n(6.0) * a_sq) * m21
        + n(8.0) * a_sq * p4 * (one - n(3.0) * big_a + n(2.0) * a_sq) * quarts
        - n(2.0) * big_a * p4 * (one - n(18.0) * big_a + n(48.0) * a_sq - n(32.0) * a_sq * big_a) * m31
        - n(4.0) * big_a * p4 * (one - n(14.0) * big_a + n(36.0) * a_sq - n(24.0) * a_sq * big_a) * m22;

    (pre * tm, pre * te)
}
