use std::fmt;

/// Non-fatal validity notes attached to a computed force.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// Separation below the larger plasma wavelength; the expansion in δ/a
    /// is no longer reliable there.
    BelowPlasmaWavelength { separation: f64, lambda_p: f64 },
    /// The fourth-order term is more than 10% of the truncated sum.
    FourthOrderLarge { fraction: f64 },
    /// a/R above 10⁻²; the proximity-force error grows like a/R.
    ProximityAspect { ratio: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::BelowPlasmaWavelength { separation, lambda_p } => write!(
                f,
                "separation {:.4} um is below the plasma wavelength {:.4} um",
                separation * 1e6,
                lambda_p * 1e6
            ),
            Warning::FourthOrderLarge { fraction } => {
                write!(f, "fourth-order term is {:.1}% of the result", fraction * 100.0)
            }
            Warning::ProximityAspect { ratio } => {
                write!(f, "a/R = {ratio:.3e} exceeds 1e-2; proximity-force error is of order a/R")
            }
        }
    }
}
