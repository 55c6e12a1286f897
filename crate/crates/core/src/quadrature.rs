//! Globally adaptive Gauss–Kronrod (7/15) quadrature over finite intervals.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate meets `max(abs, rel * |I|)`. Error estimates follow the QUADPACK
//! `qk15` rescaling, which is pessimistic for smooth integrands.

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub rel: T,
    pub abs: T,
}

impl<T: Real> Tolerance<T> {
    pub fn relative(rel: T) -> Self {
        Tolerance { rel, abs: T::zero() }
    }

    pub fn new(rel: T, abs: T) -> Self {
        Tolerance { rel, abs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub abs_error: T,
    /// Number of bisections performed.
    pub subdivisions: usize,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

fn gauss_kronrod_15<T: Real, F: FnMut(T) -> T>(f: &mut F, lo: T, hi: T) -> Panel<T> {
    let two = T::lit(2.0);
    let center = (lo + hi) / two;
    let half = (hi - lo) / two;
    let half_abs = half.abs();

    let f_center = f(center);
    let mut res_g = f_center * T::lit(WG[3]);
    let mut res_k = f_center * T::lit(WGK[7]);
    let mut res_abs = f_center.abs() * T::lit(WGK[7]);

    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = res_k / two;
    let mut res_asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    res_abs = res_abs * half_abs;
    res_asc = res_asc * half_abs;
    let mut error = ((res_k - res_g) * half).abs();

    if res_asc != T::zero() && error != T::zero() {
        let scale = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * scale.min(T::one());
    }
    let eps50 = T::lit(50.0) * T::epsilon();
    if res_abs > T::min_positive_value() / eps50 {
        error = error.max(eps50 * res_abs);
    }

    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// Integrates `f` over `[points[0], points[last]]`, starting from one panel
/// per consecutive pair of break points.
///
/// Never fails; when the subdivision budget runs out the best estimate is
/// returned with `converged == false`.
pub fn adaptive<T, F>(mut f: F, points: &[T], tol: Tolerance<T>, max_subdivisions: usize) -> Integral<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    assert!(points.len() >= 2, "need at least one interval");
    let mut panels: Vec<Panel<T>> = points
        .windows(2)
        .map(|w| gauss_kronrod_15(&mut f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * panels.len();
    let mut subdivisions = 0;

    loop {
        let (value, error) = panels
            .iter()
            .fold((T::zero(), T::zero()), |(v, e), p| (v + p.value, e + p.error));
        let target = tol.abs.max(tol.rel * value.abs());
        if error <= target || !error.is_finite() && !value.is_finite() {
            return Integral {
                value,
                abs_error: error,
                subdivisions,
                evaluations,
                converged: error <= target,
            };
        }

        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.partial_cmp(&b.1.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .expect("non-empty panel list");
        let Panel { lo, hi, .. } = panels[worst];
        let mid = (lo + hi) / T::lit(2.0);
        let too_narrow = mid <= lo || mid >= hi;
        if subdivisions >= max_subdivisions || too_narrow {
            return Integral {
                value,
                abs_error: error,
                subdivisions,
                evaluations,
                converged: false,
            };
        }

        let left = gauss_kronrod_15(&mut f, lo, mid);
        let right = gauss_kronrod_15(&mut f, mid, hi);
        evaluations += 30;
        subdivisions += 1;
        panels[worst] = left;
        panels.push(right);
    }
}

/// [`adaptive`], turning a missed tolerance into [`Error::NumericFailure`].
pub fn integrate<T, F>(f: F, points: &[T], tol: Tolerance<T>, max_subdivisions: usize) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let out = adaptive(f, points, tol, max_subdivisions);
    if out.converged {
        Ok(out)
    } else {
        Err(Error::numeric(
            format!(
                "quadrature did not reach tolerance after {} subdivisions (error estimate {:e})",
                out.subdivisions,
                out.abs_error.to_f64_lossy()
            ),
            out.value.to_f64_lossy(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact_in_one_panel() {
        // Kronrod-15 integrates degree 22 exactly.
        let out = adaptive(|x: f64| x.powi(10) - 3.0 * x.powi(3), &[0.0, 2.0], Tolerance::relative(1e-12), 0);
        let exact = 2f64.powi(11) / 11.0 - 3.0 * 2f64.powi(4) / 4.0;
        assert!(out.converged);
        assert!((out.value - exact).abs() < 1e-12 * exact.abs());
        assert_eq!(out.evaluations, 15);
    }

    #[test]
    fn bose_integral_matches_closed_form() {
        // ∫ x³/(eˣ−1) dx over [0, ∞) = π⁴/15
        let out = integrate(
            |x: f64| x.powi(3) / x.exp_m1(),
            &[0.0, 5.0, 20.0, 60.0],
            Tolerance::relative(1e-12),
            200,
        )
        .unwrap();
        let exact = std::f64::consts::PI.powi(4) / 15.0;
        assert!((out.value - exact).abs() / exact < 1e-11, "{}", out.value);
        assert!(out.abs_error >= 0.0);
    }

    #[test]
    fn endpoint_singularity_is_refined() {
        let out = integrate(|x: f64| 1.0 / x.sqrt(), &[0.0, 1.0], Tolerance::relative(1e-9), 500).unwrap();
        assert!((out.value - 2.0).abs() < 1e-8);
        assert!(out.subdivisions > 0);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let err = integrate(|x: f64| (1.0 / x).sin(), &[1e-6, 1.0], Tolerance::relative(1e-14), 3).unwrap_err();
        assert!(matches!(err, Error::NumericFailure { .. }));
    }

    #[test]
    fn works_in_single_precision() {
        let out = adaptive(|x: f32| x.exp(), &[0.0f32, 1.0], Tolerance::relative(1e-6), 20);
        assert!((out.value - (std::f32::consts::E - 1.0)).abs() < 1e-5);
    }
}
