use std::io::Write;
use std::process::{Command, Output};

fn casimir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn csv_records(text: &str) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let rows = reader.records().collect::<Result<Vec<_>, _>>().unwrap();
    (header, rows)
}

#[test]
fn no_arguments_print_the_plates_table() {
    let out = casimir(&[]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().next().unwrap().contains("F0 (nN/mm²)"));
    assert!(text.contains("1.30×10⁻⁴"));
    assert_eq!(text, stdout(&casimir(&["--table-1"])));
}

#[test]
fn table_two_csv_round_trips() {
    let out = casimir(&["--table-2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    let (header, rows) = csv_records(&text);
    assert_eq!(header.len(), 8);
    assert_eq!(&header[0], "a_um");
    assert_eq!(&header[7], "ideal_nN");
    assert_eq!(rows.len(), 9);
    // 10 um row: ratios to three decimals, ideal force 2.72E-6 nN.
    let last = &rows[8];
    let values: Vec<f64> = last.iter().map(|v| v.parse().unwrap()).collect();
    assert_eq!(values[0], 10.0);
    assert!((values[2] - 4.551).abs() < 5e-4);
    assert!((values[7] - 2.72e-6).abs() < 1e-8);
    assert_eq!(&last[7], "2.72E-6");
}

#[test]
fn output_is_deterministic() {
    let args = ["--pair", "Au-Cr", "--a", "0.5:8:6", "--temp", "0,77,300", "--format", "csv"];
    let first = casimir(&args);
    let second = casimir(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let (header, rows) = csv_records(&stdout(&first));
    assert_eq!(rows.len(), 6);
    assert_eq!(&header[3], "Au-Cr_300K");
}

#[test]
fn warnings_stay_out_of_the_data() {
    let out = casimir(&["--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("warning"));
    assert!(stderr(&out).contains("warning: a = 0.35 um, Cr-Cr"));

    let out = casimir(&["--pair", "Cr-Cr", "--a", "0.2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("below the plasma wavelength"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(casimir(&["--a", ""]).status.code(), Some(2));
    assert_eq!(casimir(&["--a", "2,1"]).status.code(), Some(2));
    assert_eq!(casimir(&["--order", "5"]).status.code(), Some(2));
    assert_eq!(casimir(&["--pair", "AuCr"]).status.code(), Some(2));
    assert_eq!(casimir(&["--geometry", "cube"]).status.code(), Some(2));
    assert_eq!(casimir(&["--radius", "1mm"]).status.code(), Some(2));
    assert_eq!(casimir(&["--table-1", "--table-2"]).status.code(), Some(2));
    let out = casimir(&["--geometry", "sphere-plate", "--method", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("plates only"));
    assert_eq!(casimir(&["--table-2", "--compare"]).status.code(), Some(2));
}

#[test]
fn material_errors_exit_with_three() {
    let out = casimir(&["--pair", "Au-Zz"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("Zz"));
    assert!(stdout(&out).is_empty());
    assert_eq!(casimir(&["--materials", "/nonexistent/metals.toml"]).status.code(), Some(3));
}

#[test]
fn validity_errors_exit_with_four() {
    // The high-temperature asymptote needs t < 1; 0.35 um at 300 K has t ≈ 11.
    assert_eq!(casimir(&["--method", "asym-high"]).status.code(), Some(4));
    assert_eq!(casimir(&["--temp", "1500"]).status.code(), Some(4));
}

#[test]
fn numeric_failures_exit_with_five() {
    // At 1 m and 1000 K, t ≈ 1e-6: the thermal series cannot meet its tolerance.
    let out = casimir(&["--a", "1m", "--temp", "1000"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stderr(&out).contains("numeric failure"));
}

#[test]
fn user_materials_extend_the_builtins() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "[[metal]]\nname = \"Ag\"\nplasma_wavelength_nm = 138\n").unwrap();
    let path = file.path().to_str().unwrap();
    let out = casimir(&["--materials", path, "--pair", "Ag-Au", "--a", "1", "--temp", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let (header, rows) = csv_records(&stdout(&out));
    assert_eq!(&header[1], "Ag-Au_0K");
    let ratio: f64 = rows[0][1].parse().unwrap();
    assert!(ratio > 0.89 && ratio < 0.90);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "[[metal]]\nname = \"Ag\"\nplasma_wavelength_nm = -1\n").unwrap();
    let out = casimir(&["--materials", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_perfect_metals() {
    let out = casimir(&["--compare", "--pair", "ideal-ideal", "--a", "1,3", "--temp", "0,300", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let (header, rows) = csv_records(&stdout(&out));
    assert_eq!(&header[5], "rel_deviation");
    assert_eq!(rows.len(), 4);
    for row in rows {
        let deviation: f64 = row[5].parse().unwrap();
        assert!(deviation <= 1e-6);
    }
}

#[test]
fn exact_method_and_other_units() {
    let out = casimir(&["--method", "exact", "--pair", "Au-Au", "--a", "350nm,0.001mm", "--temp", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let (_, rows) = csv_records(&stdout(&out));
    assert_eq!(&rows[0][0], "0.35");
    assert_eq!(&rows[0][1], "0.745");
    assert_eq!(&rows[1][0], "1");
    assert_eq!(&rows[1][1], "0.895");
}

#[test]
fn sphere_radius_and_order() {
    let out = casimir(&[
        "--geometry",
        "sphere-plate",
        "--radius",
        "2mm",
        "--pair",
        "Au-Au",
        "--a",
        "1",
        "--temp",
        "0",
        "--order",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let (_, rows) = csv_records(&stdout(&out));
    assert_eq!(&rows[0][1], "1.000");
    assert_eq!(&rows[0][2], "5.45E-3");
}
