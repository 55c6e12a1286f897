//! Sweeps over separations, temperatures and metal pairs, rendered as
//! aligned tables or CSV in the units of the published tables: ratios to
//! three decimals, ideal forces in nN/mm² (plates) or nN (sphere) to three
//! significant figures.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::constants::units;
use crate::error::{Error, Result};
use crate::lifshitz;
use crate::materials::{MaterialRegistry, MetalPair};
use crate::perturbation::{self, Geometry, Method, Order};

/// Separations of the published tables, μm.
pub const TABLE_SEPARATIONS_UM: [f64; 9] = [0.35, 0.4, 0.6, 0.8, 1.0, 3.0, 5.0, 7.0, 10.0];
pub const TABLE_TEMPERATURES_K: [f64; 2] = [0.0, 300.0];
pub const TABLE_SPHERE_RADIUS: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub enum Separations {
    /// Explicit values, m.
    List(Vec<f64>),
    /// `count` log-spaced values from `min` to `max`, m, each rounded to four
    /// significant digits in μm so printed grids read cleanly.
    LogGrid { min: f64, max: f64, count: usize },
}

impl Separations {
    /// The separations in meters, validated as non-empty, positive and
    /// strictly increasing.
    pub fn values(&self) -> Result<Vec<f64>> {
        let values = match *self {
            Separations::List(ref v) => v.clone(),
            Separations::LogGrid { min, max, count } => {
                if count == 0 {
                    return Err(Error::Usage("separation grid needs at least one point".into()));
                }
                if !(min > 0.0) || !(max >= min) || !max.is_finite() {
                    return Err(Error::Usage("separation grid needs 0 < min ≤ max".into()));
                }
                if count == 1 {
                    vec![min]
                } else {
                    (0..count)
                        .map(|i| {
                            let um = min / units::UM * (max / min).powf(i as f64 / (count - 1) as f64);
                            round_significant(um, 4) * units::UM
                        })
                        .collect()
                }
            }
        };
        if values.is_empty() {
            return Err(Error::Usage("no separations given".into()));
        }
        if values.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(Error::Usage("separations must be positive".into()));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Usage("separations must be strictly increasing".into()));
        }
        Ok(values)
    }
}

fn round_significant(v: f64, digits: i32) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    let scale = 10f64.powi(digits - 1 - v.abs().log10().floor() as i32);
    (v * scale).round() / scale
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub geometry: Geometry<f64>,
    /// Metal names as looked up in the registry.
    pub pairs: Vec<(String, String)>,
    pub separations: Separations,
    /// Temperatures, K.
    pub temperatures: Vec<f64>,
    pub method: Method,
    pub order: Order,
    pub output: OutputFormat,
    pub material_file: Option<PathBuf>,
}

impl SweepSpec {
    /// Plates, Au–Au, Au–Cr, Cr–Cr at the nine table separations, 0 and 300 K.
    pub fn table_1() -> Self {
        SweepSpec {
            geometry: Geometry::Plates,
            pairs: [("Au", "Au"), ("Au", "Cr"), ("Cr", "Cr")]
                .iter()
                .map(|&(a, b)| (a.to_string(), b.to_string()))
                .collect(),
            separations: Separations::List(TABLE_SEPARATIONS_UM.iter().map(|&a| a * units::UM).collect()),
            temperatures: TABLE_TEMPERATURES_K.to_vec(),
            method: Method::Perturbative,
            order: Order::MAX,
            output: OutputFormat::Table,
            material_file: None,
        }
    }

    /// As [`SweepSpec::table_1`] for a 1 mm sphere above a plate.
    pub fn table_2() -> Self {
        SweepSpec {
            geometry: Geometry::SpherePlate {
                radius: TABLE_SPHERE_RADIUS,
            },
            ..Self::table_1()
        }
    }

    /// Built-in metals plus the material file, if any.
    pub fn registry(&self) -> Result<MaterialRegistry> {
        let mut registry = MaterialRegistry::builtin();
        if let Some(path) = &self.material_file {
            registry.merge_file(path)?;
        }
        Ok(registry)
    }

    fn resolve(&self, registry: &MaterialRegistry) -> Result<(Vec<f64>, Vec<MetalPair<f64>>)> {
        let separations = self.separations.values()?;
        if self.pairs.is_empty() {
            return Err(Error::Usage("no metal pairs given".into()));
        }
        if self.temperatures.is_empty() {
            return Err(Error::Usage("no temperatures given".into()));
        }
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| registry.pair(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok((separations, pairs))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Separation, m.
    pub separation: f64,
    /// Ratios to the ideal force, pair-major then temperature.
    pub ratios: Vec<f64>,
    /// Ideal force in table units (nN/mm² or nN).
    pub ideal: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub sphere: bool,
    /// One label per ratio column, e.g. `Au-Cr 300K`.
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
    /// Validity notes, one line each, in row order.
    pub warnings: Vec<String>,
}

fn format_temperature(t: f64) -> String {
    format!("{t}K")
}

/// Ratio to the ideal force at one grid point by the selected method.
fn evaluate(
    method: Method,
    geometry: Geometry<f64>,
    a: f64,
    pair: &MetalPair<f64>,
    temperature: f64,
    order: Order,
) -> Result<(f64, Vec<crate::warning::Warning>)> {
    use perturbation::*;
    let result = match (geometry, method) {
        (Geometry::Plates, Method::Perturbative) => force_plates_pert_t(a, pair, temperature, order)?,
        (Geometry::Plates, Method::AsymptoticLow) => force_plates_asym_low(a, pair, temperature, order)?,
        (Geometry::Plates, Method::AsymptoticHigh) => force_plates_asym_high(a, pair, temperature, order)?,
        (Geometry::SpherePlate { radius }, Method::Perturbative) => {
            force_sphere_pert_t(a, radius, pair, temperature, order)?
        }
        (Geometry::SpherePlate { radius }, Method::AsymptoticLow) => {
            force_sphere_asym_low(a, radius, pair, temperature, order)?
        }
        (Geometry::SpherePlate { radius }, Method::AsymptoticHigh) => {
            force_sphere_asym_high(a, radius, pair, temperature, order)?
        }
        (Geometry::Plates, Method::Exact) => {
            if temperature > perturbation::MAX_TEMPERATURE || temperature < 0.0 {
                return Err(Error::Validity(format!(
                    "temperature {temperature} K is outside the supported range 0..={} K",
                    perturbation::MAX_TEMPERATURE
                )));
            }
            let exact = if temperature == 0.0 {
                lifshitz::force_plates_exact_t0(a, pair)?
            } else {
                lifshitz::force_plates_exact_t(a, pair, temperature)?
            };
            return Ok((exact.ratio_to_ideal, exact.warnings));
        }
        (Geometry::SpherePlate { .. }, Method::Exact) => {
            return Err(Error::Unsupported(
                "exact evaluation is available for parallel plates only".into(),
            ))
        }
    };
    Ok((result.ratio_to_ideal, result.warnings))
}

fn ideal_in_table_units(geometry: Geometry<f64>, a: f64) -> Result<f64> {
    let force = geometry.ideal_force(a)?;
    Ok(match geometry {
        Geometry::Plates => force * units::PA_TO_NN_PER_MM2,
        Geometry::SpherePlate { .. } => force * units::N_TO_NN,
    })
}

/// Runs `spec` with its own registry (built-ins plus material file).
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    run_sweep_with(spec, &spec.registry()?)
}

pub fn run_sweep_with(spec: &SweepSpec, registry: &MaterialRegistry) -> Result<SweepTable> {
    let (separations, pairs) = spec.resolve(registry)?;
    let columns = pairs
        .iter()
        .flat_map(|p| spec.temperatures.iter().map(move |&t| format!("{} {}", p.label(), format_temperature(t))))
        .collect();
    let mut rows = Vec::with_capacity(separations.len());
    let mut warnings = Vec::new();
    for &a in &separations {
        let mut ratios = Vec::with_capacity(pairs.len() * spec.temperatures.len());
        for pair in &pairs {
            for &temperature in &spec.temperatures {
                let (ratio, notes) = evaluate(spec.method, spec.geometry, a, pair, temperature, spec.order)?;
                for note in notes {
                    let line = format!("a = {} um, {}: {note}", format_separation(a), pair.label());
                    if !warnings.contains(&line) {
                        warnings.push(line);
                    }
                }
                ratios.push(ratio);
            }
        }
        rows.push(SweepRow {
            separation: a,
            ratios,
            ideal: ideal_in_table_units(spec.geometry, a)?,
        });
    }
    Ok(SweepTable {
        sphere: spec.geometry.is_sphere(),
        columns,
        rows,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub separation: f64,
    pub pair: String,
    pub temperature: f64,
    pub perturbative: f64,
    pub exact: f64,
    /// `|pert − exact| / exact`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub warnings: Vec<String>,
}

/// Perturbative versus exact ratios at every grid point of a plates sweep.
pub fn compare_methods(spec: &SweepSpec) -> Result<Comparison> {
    compare_methods_with(spec, &spec.registry()?)
}

pub fn compare_methods_with(spec: &SweepSpec, registry: &MaterialRegistry) -> Result<Comparison> {
    if spec.geometry.is_sphere() {
        return Err(Error::Unsupported(
            "method comparison needs the exact oracle, which exists for parallel plates only".into(),
        ));
    }
    let (separations, pairs) = spec.resolve(registry)?;
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for &a in &separations {
        for pair in &pairs {
            for &temperature in &spec.temperatures {
                let (perturbative, notes) =
                    evaluate(Method::Perturbative, Geometry::Plates, a, pair, temperature, spec.order)?;
                let (exact, _) = evaluate(Method::Exact, Geometry::Plates, a, pair, temperature, spec.order)?;
                for note in notes {
                    let line = format!("a = {} um, {}: {note}", format_separation(a), pair.label());
                    if !warnings.contains(&line) {
                        warnings.push(line);
                    }
                }
                rows.push(ComparisonRow {
                    separation: a,
                    pair: pair.label(),
                    temperature,
                    perturbative,
                    exact,
                    deviation: ((perturbative - exact) / exact).abs(),
                });
            }
        }
    }
    Ok(Comparison { rows, warnings })
}

/// Separation in μm, shortest form that round-trips.
pub fn format_separation(a: f64) -> String {
    let um = a / units::UM;
    let rounded = round_significant(um, 12);
    format!("{rounded}")
}

pub fn format_ratio(r: f64) -> String {
    format!("{r:.3}")
}

/// Three significant figures; below 0.1 as `d.dd` times a power of ten,
/// written `1.60E-2` in CSV and `1.60×10⁻²` in tables.
pub fn format_force(v: f64, format: OutputFormat) -> String {
    if !v.is_finite() || v == 0.0 {
        return format!("{v}");
    }
    if v.abs() >= 0.1 {
        let rounded = round_significant(v, 3);
        let decimals = (2 - rounded.abs().log10().floor() as i32).max(0) as usize;
        return format!("{rounded:.decimals$}");
    }
    let mut exponent = v.abs().log10().floor() as i32;
    let mut mantissa = round_significant(v / 10f64.powi(exponent), 3);
    if mantissa.abs() >= 10.0 {
        mantissa /= 10.0;
        exponent += 1;
    }
    match format {
        OutputFormat::Csv => format!("{mantissa:.2}E{exponent}"),
        OutputFormat::Table => format!("{mantissa:.2}×10{}", superscript(exponent)),
    }
}

fn superscript(n: i32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::new();
    if n < 0 {
        out.push('⁻');
    }
    for c in n.unsigned_abs().to_string().chars() {
        out.push(DIGITS[c.to_digit(10).unwrap() as usize]);
    }
    out
}

fn ideal_label(sphere: bool, format: OutputFormat) -> &'static str {
    match (sphere, format) {
        (false, OutputFormat::Csv) => "ideal_nN_per_mm2",
        (true, OutputFormat::Csv) => "ideal_nN",
        (false, OutputFormat::Table) => "F0 (nN/mm²)",
        (true, OutputFormat::Table) => "F0 (nN)",
    }
}

fn render_grid(header: Vec<String>, body: Vec<Vec<String>>, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            for line in std::iter::once(&header).chain(body.iter()) {
                out.push_str(&line.join(","));
                out.push('\n');
            }
        }
        OutputFormat::Table => {
            let widths: Vec<usize> = (0..header.len())
                .map(|c| {
                    std::iter::once(&header)
                        .chain(body.iter())
                        .map(|line| line[c].chars().count())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            for line in std::iter::once(&header).chain(body.iter()) {
                let cells: Vec<String> = line
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| format!("{}{cell}", " ".repeat(w - cell.chars().count())))
                    .collect();
                let _ = writeln!(out, "{}", cells.join("  "));
            }
        }
    }
    out
}

impl SweepTable {
    pub fn render(&self, format: OutputFormat) -> String {
        let mut header = vec![match format {
            OutputFormat::Csv => "a_um".to_string(),
            OutputFormat::Table => "a (um)".to_string(),
        }];
        header.extend(self.columns.iter().map(|c| match format {
            OutputFormat::Csv => c.replace(' ', "_"),
            OutputFormat::Table => c.clone(),
        }));
        header.push(ideal_label(self.sphere, format).to_string());
        let body = self
            .rows
            .iter()
            .map(|row| {
                let mut line = vec![format_separation(row.separation)];
                line.extend(row.ratios.iter().map(|&r| format_ratio(r)));
                line.push(format_force(row.ideal, format));
                line
            })
            .collect();
        render_grid(header, body, format)
    }
}

impl Comparison {
    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().map(|r| r.deviation).fold(0.0, f64::max)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        let header = ["a_um", "pair", "T_K", "perturbative", "exact", "rel_deviation"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let body = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    format_separation(r.separation),
                    r.pair.clone(),
                    format!("{}", r.temperature),
                    format!("{:.6}", r.perturbative),
                    format!("{:.6}", r.exact),
                    format!("{:.3e}", r.deviation),
                ]
            })
            .collect();
        render_grid(header, body, format)
    }
}
