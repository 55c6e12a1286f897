//! CODATA 2018 exact/recommended values, SI units.

use crate::scalar::Real;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// ħc in J·m.
#[inline]
pub fn hbar_c<T: Real>() -> T {
    T::lit(HBAR) * T::lit(C)
}

/// Conversion factors between SI and the units used by the tables.
pub mod units {
    pub const NM: f64 = 1e-9;
    /// Dividing by this instead of multiplying by `NM` keeps round numbers
    /// of nanometres bit-identical to their literals in meters.
    pub const NM_PER_M: f64 = 1e9;
    pub const UM: f64 = 1e-6;
    pub const MM: f64 = 1e-3;
    /// 1 N/m² expressed in nN/mm².
    pub const PA_TO_NN_PER_MM2: f64 = 1e3;
    /// 1 N expressed in nN.
    pub const N_TO_NN: f64 = 1e9;
}
