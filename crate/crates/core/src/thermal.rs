//! Temperature brackets of the zeroth- and first-order coefficients for
//! plates (`S₀`, `S₁`) and sphere-plate (`Q₀`, `Q₁`), as functions of
//! `t = T_eff / T`.
//!
//! Each bracket is a sum over `n ≥ 1` of power laws in `nt` and hyperbolic
//! functions of `πnt`. The pure power-law parts (`Σ 1/(nt)⁴`, and `coth → 1`
//! in `Σ coth(πnt)/(nt)³`) are summed in closed form through ζ(3) and
//! ζ(4) = π⁴/90. What is left decays like `e^{-2πnt}`, and is summed term by
//! term in `q = e^{-2πnt}` form so `sinh` never overflows.

use crate::constants::ZETA_3;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hard cap on summed terms; reached only for `t ≲ 1e-7`.
const MAX_TERMS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: T,
    pub terms_used: usize,
    /// Upper bound on the magnitude of the omitted terms.
    pub tail_bound: T,
}

/// How many terms of the exponentially decaying remainder to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Stop once the omitted tail can no longer change the accumulated sum.
    #[default]
    Adaptive,
    /// Sum exactly this many terms.
    Fixed(usize),
}

/// Apéry's constant ζ(3).
pub fn zeta3<T: Real>() -> T {
    T::lit(ZETA_3)
}

/// Hyperbolic factors at `z = πnt`.
struct Hyperbolic<T> {
    coth: T,
    coth_minus_one: T,
    inv_sinh2: T,
}

impl<T: Real> Hyperbolic<T> {
    fn at(z: T) -> Self {
        let two = T::lit(2.0);
        let q = (-two * z).exp();
        let one_minus_q = -(-two * z).exp_m1();
        Hyperbolic {
            coth: (T::one() + q) / one_minus_q,
            coth_minus_one: two * q / one_minus_q,
            inv_sinh2: T::lit(4.0) * q / (one_minus_q * one_minus_q),
        }
    }
}

/// Sums `Σ_{n≥1} term(n)` where `term` returns `(value, magnitude)` and the
/// magnitudes shrink at least geometrically with ratio `e^{-2πt}`.
fn sum_exponential<T, F>(t: T, truncation: Truncation, mut term: F) -> Result<(T, usize, T)>
where
    T: Real,
    F: FnMut(T) -> (T, T),
{
    let ratio = (-T::TAU() * t).exp();
    let tail_factor = ratio / (T::one() - ratio);
    let absorb = T::epsilon() / T::lit(256.0);

    let limit = match truncation {
        Truncation::Adaptive => MAX_TERMS,
        Truncation::Fixed(0) => return Err(Error::domain("a series needs at least one term")),
        Truncation::Fixed(n) => n,
    };

    let mut sum = T::zero();
    let mut tail = T::infinity();
    for n in 1..=limit {
        let y = T::from_usize_lossy(n) * t;
        let (value, magnitude) = term(y);
        sum = sum + value;
        tail = magnitude * tail_factor;
        if truncation == Truncation::Adaptive && n >= 4 && tail <= absorb * sum.abs() {
            return Ok((sum, n, tail));
        }
    }
    match truncation {
        Truncation::Fixed(n) => Ok((sum, n, tail)),
        Truncation::Adaptive => Err(Error::numeric(
            format!("thermal series did not converge within {MAX_TERMS} terms at t = {:e}", t.to_f64_lossy()),
            sum.to_f64_lossy(),
        )),
    }
}

fn check_t<T: Real>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("t = T_eff/T must be positive and finite, got {}", t.to_f64_lossy())))
    }
}

fn finish<T: Real>(closed: T, partial: (T, usize, T), truncation: Truncation) -> Result<SeriesValue<T>> {
    let (sum, terms_used, tail_bound) = partial;
    let value = closed + sum;
    if truncation == Truncation::Adaptive {
        let allowed = T::lit(1e-12).max(T::lit(64.0) * T::epsilon()) * value.abs().max(T::one());
        if !(tail_bound <= allowed) {
            return Err(Error::numeric(
                format!(
                    "series tail bound {:e} exceeds tolerance {:e}",
                    tail_bound.to_f64_lossy(),
                    allowed.to_f64_lossy()
                ),
                value.to_f64_lossy(),
            ));
        }
    }
    Ok(SeriesValue {
        value,
        terms_used,
        tail_bound,
    })
}

/// Zeroth-order plates bracket
/// `(30/π⁴) Σ [1/(nt)⁴ − π³ coth(πnt)/(nt sinh²(πnt))]`.
pub fn plates_s0<T: Real>(t: T) -> Result<SeriesValue<T>> {
    plates_s0_with(t, Truncation::Adaptive)
}

pub fn plates_s0_with<T: Real>(t: T, truncation: Truncation) -> Result<SeriesValue<T>> {
    check_t(t)?;
    let pi = T::PI();
    let k = T::lit(30.0) / pi;
    let partial = sum_exponential(t, truncation, |y| {
        let h = Hyperbolic::at(pi * y);
        let v = k * h.coth * h.inv_sinh2 / y;
        (-v, v)
    })?;
    let closed = T::one() / (T::lit(3.0) * t.powi(4));
    finish(closed, partial, truncation)
}

/// First-order plates bracket, the series subtracted from 8/3:
/// `(15/π) Σ [sinh cosh/(πnt)² + 4 coth + 2πnt − 6πnt coth² + 1/(πnt)] / (nt sinh²)`.
pub fn plates_s1<T: Real>(t: T) -> Result<SeriesValue<T>> {
    plates_s1_with(t, Truncation::Adaptive)
}

pub fn plates_s1_with<T: Real>(t: T, truncation: Truncation) -> Result<SeriesValue<T>> {
    check_t(t)?;
    let pi = T::PI();
    let k = T::lit(15.0) / pi;
    let partial = sum_exponential(t, truncation, |y| {
        let h = Hyperbolic::at(pi * y);
        let parts = [
            h.coth_minus_one / (pi * pi * y.powi(3)),
            T::lit(4.0) * h.coth * h.inv_sinh2 / y,
            T::lit(2.0) * pi * h.inv_sinh2,
            -T::lit(6.0) * pi * h.coth * h.coth * h.inv_sinh2,
            h.inv_sinh2 / (pi * y * y),
        ];
        let value = parts.iter().fold(T::zero(), |acc, &v| acc + v);
        let magnitude = parts.iter().fold(T::zero(), |acc, &v| acc + v.abs());
        (k * value, k * magnitude)
    })?;
    let closed = T::lit(15.0) * zeta3::<T>() / (pi.powi(3) * t.powi(3));
    finish(closed, partial, truncation)
}

/// Zeroth-order sphere bracket
/// `(90/π⁴) Σ [π coth(πnt)/(2(nt)³) − 1/(nt)⁴ + π²/(2(nt)² sinh²(πnt))]`.
pub fn sphere_q0<T: Real>(t: T) -> Result<SeriesValue<T>> {
    sphere_q0_with(t, Truncation::Adaptive)
}

pub fn sphere_q0_with<T: Real>(t: T, truncation: Truncation) -> Result<SeriesValue<T>> {
    check_t(t)?;
    let pi = T::PI();
    let k3 = T::lit(45.0) / pi.powi(3);
    let k2 = T::lit(45.0) / (pi * pi);
    let partial = sum_exponential(t, truncation, |y| {
        let h = Hyperbolic::at(pi * y);
        let a = k3 * h.coth_minus_one / y.powi(3);
        let b = k2 * h.inv_sinh2 / (y * y);
        (a + b, a + b)
    })?;
    let closed = T::lit(45.0) * zeta3::<T>() / (pi.powi(3) * t.powi(3)) - T::one() / t.powi(4);
    finish(closed, partial, truncation)
}

/// First-order sphere bracket, the series subtracted from 2:
/// `(45/π⁴) Σ [π coth/(nt)³ − 4/(nt)⁴ + π²/((nt)² sinh²) + 2π³ coth/(nt sinh²)]`.
pub fn sphere_q1<T: Real>(t: T) -> Result<SeriesValue<T>> {
    sphere_q1_with(t, Truncation::Adaptive)
}

pub fn sphere_q1_with<T: Real>(t: T, truncation: Truncation) -> Result<SeriesValue<T>> {
    check_t(t)?;
    let pi = T::PI();
    let k3 = T::lit(45.0) / pi.powi(3);
    let k2 = T::lit(45.0) / (pi * pi);
    let k1 = T::lit(90.0) / pi;
    let partial = sum_exponential(t, truncation, |y| {
        let h = Hyperbolic::at(pi * y);
        let v = k3 * h.coth_minus_one / y.powi(3) + k2 * h.inv_sinh2 / (y * y) + k1 * h.coth * h.inv_sinh2 / y;
        (v, v)
    })?;
    let closed = T::lit(45.0) * zeta3::<T>() / (pi.powi(3) * t.powi(3)) - T::lit(2.0) / t.powi(4);
    finish(closed, partial, truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type SeriesFn = fn(f64, Truncation) -> Result<SeriesValue<f64>>;

    const ALL: [(&str, SeriesFn); 4] = [
        ("S0", plates_s0_with::<f64>),
        ("S1", plates_s1_with::<f64>),
        ("Q0", sphere_q0_with::<f64>),
        ("Q1", sphere_q1_with::<f64>),
    ];

    /// The brackets exactly as printed: plain term-by-term sums with
    /// sinh/cosh, run long enough for the power-law tails to settle.
    fn direct(name: &str, t: f64) -> f64 {
        const N: usize = 200_000;
        let mut s = 0.0;
        for n in 1..N {
            let y = n as f64 * t;
            let z = PI * y;
            let (coth, inv_sinh2) = if z > 300.0 { (1.0, 0.0) } else { (1.0 / z.tanh(), 1.0 / z.sinh().powi(2)) };
            s += match name {
                "S0" => 1.0 / y.powi(4) - PI.powi(3) / y * coth * inv_sinh2,
                "S1" => {
                    if z > 300.0 {
                        1.0 / (PI * PI * y.powi(3))
                    } else {
                        inv_sinh2 / y * (z.sinh() * z.cosh() / (z * z) + 4.0 * coth + 2.0 * z - 6.0 * z * coth * coth + 1.0 / z)
                    }
                }
                "Q0" => PI / (2.0 * y.powi(3)) * coth - 1.0 / y.powi(4) + PI * PI / (2.0 * y * y) * inv_sinh2,
                "Q1" => {
                    PI / y.powi(3) * coth - 4.0 / y.powi(4)
                        + PI * PI / (y * y) * inv_sinh2
                        + 2.0 * PI.powi(3) / y * coth * inv_sinh2
                }
                _ => unreachable!(),
            };
        }
        // Power-law tails from n = N on: Σ n^{-k} ≈ (N − ½)^{1−k}/(k − 1).
        let tail = |k: i32| (N as f64 - 0.5).powi(1 - k) / ((k - 1) as f64 * t.powi(k));
        s += match name {
            "S0" => tail(4),
            "S1" => tail(3) / (PI * PI),
            "Q0" => PI / 2.0 * tail(3) - tail(4),
            _ => PI * tail(3) - 4.0 * tail(4),
        };
        let k = match name {
            "S0" => 30.0 / PI.powi(4),
            "S1" => 15.0 / PI,
            "Q0" => 90.0 / PI.powi(4),
            _ => 45.0 / PI.powi(4),
        };
        k * s
    }

    #[test]
    fn closed_form_split_matches_direct_summation() {
        for t in [0.5, 1.0, 2.5, 7.0] {
            for (name, f) in ALL {
                let ours = f(t, Truncation::Adaptive).unwrap().value;
                let reference = direct(name, t);
                assert!(
                    (ours - reference).abs() <= 1e-9 * reference.abs().max(1e-3),
                    "{name}({t}): {ours} vs {reference}"
                );
            }
        }
    }

    #[test]
    fn zeta3_constant() {
        let direct: f64 = (1..200_000u64).rev().map(|n| 1.0 / (n as f64).powi(3)).sum();
        // Σ_{n<N} 1/n³ falls short of ζ(3) by about 1/(2N²).
        assert!((zeta3::<f64>() - direct - 1.0 / (2.0 * 2e5f64.powi(2))).abs() < 1e-15);
        assert!((30.0 * zeta3::<f64>() / PI.powi(3) - 1.163_045_388_087_504).abs() < 1e-14);
        assert!((45.0 * zeta3::<f64>() / PI.powi(3) - 1.744_568_082_131_256).abs() < 1e-14);
    }

    #[test]
    fn low_temperature_limits() {
        let t: f64 = 20.0;
        let s0 = plates_s0(t).unwrap().value;
        assert!((s0 - 1.0 / (3.0 * t.powi(4))).abs() / (1.0 / (3.0 * t.powi(4))) < 1e-3);
        let lead = 15.0 * zeta3::<f64>() / (PI.powi(3) * t.powi(3));
        assert!((plates_s1(t).unwrap().value - lead).abs() / lead < 1e-2);
        let q0_lead = 45.0 * zeta3::<f64>() / (PI.powi(3) * t.powi(3)) - 1.0 / t.powi(4);
        assert!((sphere_q0(t).unwrap().value - q0_lead).abs() / q0_lead < 1e-3);
        let q1_lead = 45.0 * zeta3::<f64>() / (PI.powi(3) * t.powi(3)) - 2.0 / t.powi(4);
        assert!((sphere_q1(t).unwrap().value - q1_lead).abs() / q1_lead < 1e-2);
        for (_, f) in ALL {
            assert!(f(1e4, Truncation::Adaptive).unwrap().value.abs() < 1e-11);
        }
    }

    #[test]
    fn high_temperature_limits() {
        let t = 0.1;
        let plates = 30.0 * zeta3::<f64>() / (PI.powi(3) * t);
        let sphere = 45.0 * zeta3::<f64>() / (PI.powi(3) * t);
        let s0 = plates_s0(t).unwrap().value;
        let q0 = sphere_q0(t).unwrap().value;
        assert!(((1.0 + s0) - plates).abs() / plates < 1e-2);
        assert!(((1.0 + q0) - sphere).abs() / sphere < 1e-2);

        // First-order structure: [1+S0 − 2ε(8/3 − S1)]/(1+S0) → 1 − 3ε,
        // [1+Q0 − 2ε(2 − Q1)]/(1+Q0) → 1 − 2ε.
        let eps = 1e-3;
        let s1 = plates_s1(t).unwrap().value;
        let q1 = sphere_q1(t).unwrap().value;
        let plates_factor = (1.0 + s0 - 2.0 * eps * (8.0 / 3.0 - s1)) / (1.0 + s0);
        let sphere_factor = (1.0 + q0 - 2.0 * eps * (2.0 - q1)) / (1.0 + q0);
        assert!((plates_factor - (1.0 - 3.0 * eps)).abs() / (1.0 - 3.0 * eps) < 1e-2);
        assert!((sphere_factor - (1.0 - 2.0 * eps)).abs() / (1.0 - 2.0 * eps) < 1e-2);
        // The first-order bracket itself: 8/3 − S1 → (3/2)(1 + S0), 2 − Q1 → (1 + Q0).
        assert!(((8.0 / 3.0 - s1) / (1.5 * (1.0 + s0)) - 1.0).abs() < 1e-2);
        assert!(((2.0 - q1) / (1.0 + q0) - 1.0).abs() < 1e-2);
    }

    #[test]
    fn small_t_is_safe() {
        let t = 0.05;
        let s0 = plates_s0(t).unwrap();
        let q0 = sphere_q0(t).unwrap();
        assert!(s0.terms_used < 200);
        let plates = 30.0 * zeta3::<f64>() / (PI.powi(3) * t);
        let sphere = 45.0 * zeta3::<f64>() / (PI.powi(3) * t);
        assert!(((1.0 + s0.value) / plates - 1.0).abs() < 5e-3);
        assert!(((1.0 + q0.value) / sphere - 1.0).abs() < 5e-3);
        assert!(plates_s1(t).is_ok() && sphere_q1(t).is_ok());
    }

    #[test]
    fn values_positive_and_decreasing() {
        let grid: Vec<f64> = (0..=60).map(|i| 0.05 * (1000f64).powf(i as f64 / 60.0)).collect();
        for (name, f) in ALL {
            let vals: Vec<f64> = grid.iter().map(|&t| f(t, Truncation::Adaptive).unwrap().value).collect();
            if name.ends_with('0') {
                assert!(vals.windows(2).all(|w| w[1] < w[0]), "{name} not decreasing");
                assert!(vals.iter().all(|&v| v > 0.0), "{name} not positive");
            } else {
                // First-order brackets go like −1/t at high temperature and
                // like +1/t³ at low temperature: one maximum in between.
                let peak = vals.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
                assert!(peak > 0 && peak < vals.len() - 1, "{name} peak at edge");
                assert!(vals[..=peak].windows(2).all(|w| w[1] > w[0]), "{name} not rising before peak");
                assert!(vals[peak..].windows(2).all(|w| w[1] < w[0]), "{name} not falling after peak");
                assert!(vals[0] < 0.0 && *vals.last().unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn tail_bound_contract() {
        for t in [0.05, 0.2, 1.0, 5.0, 20.0] {
            for (_, f) in ALL {
                let v = f(t, Truncation::Adaptive).unwrap();
                assert!(v.terms_used >= 1);
                assert!(v.tail_bound >= 0.0);
                assert!(v.tail_bound <= 1e-12 * v.value.abs().max(1.0));
            }
        }
    }

    #[test]
    fn invalid_arguments() {
        for (_, f) in ALL {
            assert!(matches!(f(0.0, Truncation::Adaptive), Err(Error::Domain(_))));
            assert!(matches!(f(-1.0, Truncation::Adaptive), Err(Error::Domain(_))));
            assert!(matches!(f(f64::NAN, Truncation::Adaptive), Err(Error::Domain(_))));
            assert!(matches!(f(1.0, Truncation::Fixed(0)), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn fixed_truncation_bound_covers_the_rest() {
        for (_, f) in ALL {
            let few = f(0.2, Truncation::Fixed(5)).unwrap();
            let full = f(0.2, Truncation::Adaptive).unwrap();
            assert_eq!(few.terms_used, 5);
            assert!((few.value - full.value).abs() <= few.tail_bound);
        }
    }

    #[test]
    fn single_precision_evaluation() {
        let v = plates_s0::<f32>(1.0).unwrap().value;
        let w = plates_s0::<f64>(1.0).unwrap().value;
        assert!((v as f64 - w).abs() < 1e-6);
    }
}
