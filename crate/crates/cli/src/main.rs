//! `casimir`: sweeps of Casimir force ratios for two plasma-model metals.
//!
//! With no arguments, prints the parallel-plate table (Au–Au, Au–Cr, Cr–Cr at
//! 0 and 300 K). Data goes to stdout, diagnostics to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use casimir_core::constants::units;
use casimir_core::perturbation::{Geometry, Method, Order};
use casimir_core::sweep::{self, OutputFormat, Separations, SweepSpec};
use casimir_core::Error;
use clap::{Parser, ValueEnum};

const EXIT_USAGE: u8 = 2;
const EXIT_MATERIAL: u8 = 3;
const EXIT_VALIDITY: u8 = 4;
const EXIT_NUMERIC: u8 = 5;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeometryArg {
    Plates,
    SpherePlate,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Pert,
    Exact,
    AsymLow,
    AsymHigh,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

/// Casimir force between plates or a sphere and a plate made of two
/// different metals, as ratios to the ideal-metal force.
///
/// Lengths without a unit are micrometres; `nm`, `um`, `μm`, `mm` and `m`
/// suffixes are accepted.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
struct Cli {
    #[arg(long, value_enum)]
    geometry: Option<GeometryArg>,

    /// Sphere radius [default: 1mm].
    #[arg(long, value_parser = parse_length)]
    radius: Option<f64>,

    /// Metal pair `M1-M2`; repeat for several pairs.
    #[arg(long = "pair", value_name = "M1-M2")]
    pairs: Vec<String>,

    /// Separations: comma list, or `min:max:count` for a log grid.
    #[arg(long = "a", value_name = "LIST|MIN:MAX:COUNT", allow_hyphen_values = true)]
    separations: Option<String>,

    /// Temperatures in K, comma separated.
    #[arg(long = "temp", value_name = "LIST", allow_hyphen_values = true)]
    temperatures: Option<String>,

    #[arg(long, value_enum)]
    method: Option<MethodArg>,

    /// Truncation order in δ/a, 0..=4.
    #[arg(long)]
    order: Option<u8>,

    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,

    /// TOML file with extra `[[metal]]` entries (`name`, `plasma_wavelength_nm`).
    #[arg(long)]
    materials: Option<PathBuf>,

    /// Preset: parallel plates, table separations, 0 and 300 K.
    #[arg(long = "table-1", conflicts_with = "table_2")]
    table_1: bool,

    /// Preset: sphere of 1 mm above a plate, table separations, 0 and 300 K.
    #[arg(long = "table-2")]
    table_2: bool,

    /// Print perturbative and exact ratios side by side (plates only).
    #[arg(long)]
    compare: bool,
}

fn parse_length(text: &str) -> Result<f64, String> {
    let text = text.trim();
    let (number, scale) = [
        ("nm", units::NM),
        ("um", units::UM),
        ("μm", units::UM),
        ("mm", units::MM),
        ("m", 1.0),
    ]
    .iter()
    .find_map(|&(suffix, scale)| text.strip_suffix(suffix).map(|n| (n, scale)))
    .unwrap_or((text, units::UM));
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a length"))?;
    if !(value > 0.0) || !value.is_finite() {
        return Err(format!("length `{text}` must be positive"));
    }
    Ok(value * scale)
}

fn parse_separations(text: &str) -> Result<Separations, String> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [min, max, count] => {
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("grid count `{count}` is not a whole number"))?;
            Ok(Separations::LogGrid {
                min: parse_length(min)?,
                max: parse_length(max)?,
                count,
            })
        }
        [list] => list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(parse_length)
            .collect::<Result<Vec<_>, _>>()
            .map(Separations::List),
        _ => Err(format!("`{text}` is neither a list nor min:max:count")),
    }
}

fn parse_temperatures(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let s = s.trim();
            let s = s.strip_suffix('K').unwrap_or(s);
            s.parse::<f64>().map_err(|_| format!("`{s}` is not a temperature"))
        })
        .collect()
}

fn parse_pair(text: &str) -> Result<(String, String), String> {
    match text.split_once('-') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains('-') => Ok((a.to_string(), b.to_string())),
        _ => Err(format!("pair `{text}` must look like `Au-Cr`")),
    }
}

fn build_spec(cli: &Cli) -> Result<SweepSpec, String> {
    let sphere_requested = cli.table_2 || matches!(cli.geometry, Some(GeometryArg::SpherePlate));
    let mut spec = if sphere_requested {
        SweepSpec::table_2()
    } else {
        SweepSpec::table_1()
    };
    match cli.geometry {
        Some(GeometryArg::Plates) => spec.geometry = Geometry::Plates,
        Some(GeometryArg::SpherePlate) | None => {}
    }
    if let Some(radius) = cli.radius {
        if !spec.geometry.is_sphere() {
            return Err("--radius only applies to --geometry sphere-plate".into());
        }
        spec.geometry = Geometry::SpherePlate { radius };
    }
    if !cli.pairs.is_empty() {
        spec.pairs = cli.pairs.iter().map(|p| parse_pair(p)).collect::<Result<_, _>>()?;
    }
    if let Some(text) = &cli.separations {
        spec.separations = parse_separations(text)?;
    }
    if let Some(text) = &cli.temperatures {
        spec.temperatures = parse_temperatures(text)?;
    }
    if let Some(method) = cli.method {
        spec.method = match method {
            MethodArg::Pert => Method::Perturbative,
            MethodArg::Exact => Method::Exact,
            MethodArg::AsymLow => Method::AsymptoticLow,
            MethodArg::AsymHigh => Method::AsymptoticHigh,
        };
    }
    if let Some(order) = cli.order {
        spec.order = Order::new(order).map_err(|e| e.to_string())?;
    }
    spec.output = match cli.format {
        FormatArg::Table => OutputFormat::Table,
        FormatArg::Csv => OutputFormat::Csv,
    };
    spec.material_file = cli.materials.clone();
    Ok(spec)
}

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::Usage(_) | Error::Domain(_) | Error::Unsupported(_) => EXIT_USAGE,
        Error::UnknownMetal(_) | Error::MaterialFile(_) => EXIT_MATERIAL,
        Error::Validity(_) => EXIT_VALIDITY,
        Error::NumericFailure { .. } => EXIT_NUMERIC,
    }
}

fn run(spec: &SweepSpec, compare: bool) -> Result<(String, Vec<String>), Error> {
    if compare {
        let comparison = sweep::compare_methods(spec)?;
        Ok((comparison.render(spec.output), comparison.warnings))
    } else {
        let table = sweep::run_sweep(spec)?;
        Ok((table.render(spec.output), table.warnings))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match build_spec(&cli) {
        Ok(spec) => spec,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&spec, cli.compare) {
        Ok((output, warnings)) => {
            for warning in warnings {
                eprintln!("warning: {warning}");
            }
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code(&error))
        }
    }
}
