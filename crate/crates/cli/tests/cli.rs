//! End-to-end tests of the `radialgeo` binary: exit codes, file formats,
//! determinism, and the numeric behavior pinned for each subcommand.

use std::collections::HashMap;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_radialgeo"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

/// Parse a CSV produced by the binary into named columns of f64 (error
/// column excluded; rows with a nonempty error flag are skipped).
fn parse_csv(text: &str) -> HashMap<String, Vec<f64>> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().expect("header").split(',').collect();
    let mut cols: HashMap<String, Vec<f64>> = HashMap::new();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), header.len(), "ragged row: {line}");
        if !cells.last().unwrap().is_empty() {
            continue; // flagged row
        }
        for (name, cell) in header.iter().zip(&cells) {
            if *name == "error" || cell.is_empty() {
                continue;
            }
            cols.entry((*name).into())
                .or_default()
                .push(cell.parse().unwrap_or(f64::NAN));
        }
    }
    cols
}

#[test]
fn verify_default_run_passes() {
    let out = run(&["verify", "--seed", "7"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["pass"], true);
    assert_eq!(report["failed"], 0);
    assert!(report["entries"].as_array().unwrap().len() > 30);
    // every entry carries a claim string and the pass <=> residual rule
    for entry in report["entries"].as_array().unwrap() {
        assert!(!entry["claim"].as_str().unwrap().is_empty());
        let pass = entry["pass"].as_bool().unwrap();
        let resid = entry["max_residual"].as_f64().unwrap();
        let tol = entry["tolerance"].as_f64().unwrap();
        assert_eq!(pass, resid <= tol);
    }
}

#[test]
fn verify_reports_expected_nonzero_controls() {
    let out = run(&["verify", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let controls: Vec<&serde_json::Value> = report["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["expected_nonzero"] == true)
        .collect();
    assert!(controls.len() >= 3, "negative controls present");
    assert!(controls.iter().all(|e| e["pass"] == true));
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_surface_exits_2() {
    let out = run(&["curvature", "--surface", r#"{"name":"dodecahedron"}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn curvature_catenoid_is_class1() {
    let out = run(&[
        "curvature",
        "--factor",
        "radial",
        "--surface",
        r#"{"name":"catenoid"}"#,
        "--grid",
        "8x8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cols = parse_csv(&stdout(&out));
    assert_eq!(cols["W1"].len(), 64);
    assert!(cols["W1"].iter().all(|w| w.abs() < 1e-9));
}

#[test]
fn curvature_cone_is_class2() {
    let out = run(&[
        "curvature",
        "--factor",
        "radial",
        "--surface",
        r#"{"name":"cone","params":{"slope":1.0}}"#,
        "--grid",
        "8x8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cols = parse_csv(&stdout(&out));
    assert!(cols["W2"].iter().all(|w| w.abs() < 1e-9));
    // and not class 1
    assert!(cols["W1"].iter().all(|w| w.abs() > 0.1));
}

#[test]
fn curvature_sphere_battery_columns() {
    let out = run(&[
        "curvature",
        "--factor",
        "radial",
        "--surface",
        r#"{"name":"sphere_origin","params":{"radius":1.0}}"#,
        "--grid",
        "6x6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cols = parse_csv(&stdout(&out));
    assert!(cols["KEt"].iter().all(|k| k.abs() < 1e-9));
    assert!(cols["Kt"].iter().all(|k| (k - 1.0).abs() < 1e-9));
    assert!(cols["Ht"].iter().all(|h| h.abs() < 1e-9));
}

#[test]
fn geodesic_radial_shot_hits_exponential_endpoint() {
    let out = run(&[
        "geodesic",
        "--factor",
        "radial",
        "--start",
        "1,0,0",
        "--direction",
        "1,0,0",
        "--length",
        "1",
        "--step",
        "0.001",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cols = parse_csv(&stdout(&out));
    let x1 = cols["x1"].last().unwrap();
    assert!((x1 - std::f64::consts::E).abs() < 1e-6, "endpoint {x1}");
    // g-speed column stays at 1
    assert!(cols["gspeed"].iter().all(|s| (s - 1.0).abs() < 1e-6));
}

#[test]
fn geodesic_circle_drift_distinguishes_factors() {
    let radius = |text: &str| -> Vec<f64> {
        let cols = parse_csv(text);
        cols["x1"]
            .iter()
            .zip(&cols["x2"])
            .map(|(x, y)| (x * x + y * y).sqrt())
            .collect()
    };
    let out = run(&[
        "geodesic",
        "--factor",
        "radial",
        "--start",
        "1,0,0",
        "--direction",
        "0,1,0",
        "--length",
        "1",
        "--step",
        "0.001",
    ]);
    let drift = radius(&stdout(&out))
        .iter()
        .map(|r| (r - 1.0).abs())
        .fold(0.0, f64::max);
    assert!(drift < 1e-6, "radial-model circle drift {drift}");

    let out = run(&[
        "geodesic",
        "--factor",
        "exp",
        "--start",
        "1,0,0",
        "--direction",
        "0,1,0",
        "--length",
        "1",
        "--step",
        "0.001",
    ]);
    let drift = radius(&stdout(&out))
        .iter()
        .map(|r| (r - 1.0).abs())
        .fold(0.0, f64::max);
    assert!(drift > 1e-2, "exp-factor control drift {drift}");
}

#[test]
fn rotation_root_recovers_unit_radius() {
    let c0 = format!("{:.16e}", 9.0 * (-2.0_f64).exp());
    let out = run(&["rotation", "--factor", "exp", "--c0", &c0]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let roots: Vec<f64> = row
        .split(',')
        .nth(1)
        .unwrap()
        .split(';')
        .map(|r| r.parse().unwrap())
        .collect();
    assert!(
        roots.iter().any(|r| (r - 1.0).abs() < 1e-6),
        "roots {roots:?}"
    );
}

#[test]
fn rotation_radial_factor_yields_structured_error_row() {
    let out = run(&["rotation", "--factor", "radial", "--c0", "1.0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert!(cells[1].is_empty(), "no roots for the sqrt(t) factor");
    assert!(cells.last().unwrap().contains("no sign change"));
}

#[test]
fn rotation_sweep_emits_monotone_roots() {
    let out = run(&["rotation", "--factor", "exp", "--sweep", "0.1:2.0:6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let first_roots: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| {
            l.split(',')
                .nth(1)
                .unwrap()
                .split(';')
                .next()
                .unwrap()
                .parse()
                .unwrap()
        })
        .collect();
    assert_eq!(first_roots.len(), 6);
    // larger curvature, smaller sphere (w decreasing)
    for pair in first_roots.windows(2) {
        assert!(pair[1] < pair[0], "roots not decreasing: {first_roots:?}");
    }
}

#[test]
fn rotation_profile_reproduces_sphere() {
    let c0 = format!("{:.16e}", 9.0 * (-2.0_f64).exp());
    let out = run(&[
        "rotation",
        "--factor",
        "exp",
        "--c0",
        &c0,
        "--profile-start",
        "1.0",
        "--span",
        "0.9",
        "--step",
        "0.001",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let cols = parse_csv(&stdout(&out));
    for (u, phi) in cols["u"].iter().zip(&cols["phi"]) {
        assert!((phi - (1.0 - u * u).sqrt()).abs() < 1e-6);
    }
    assert!(cols["residual"].iter().all(|r| r.abs() < 1e-6));
}

#[test]
fn mesh_sphere_with_product_chart_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let obj_path = dir.path().join("sphere.obj");
    let out = run(&[
        "mesh",
        "--factor",
        "radial",
        "--surface",
        r#"{"name":"sphere_origin","params":{"radius":1.0}}"#,
        "--grid",
        "8x8",
        "--map",
        "psi",
        "--out",
        obj_path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let obj = std::fs::read_to_string(&obj_path).unwrap();
    assert!(!obj.contains("NaN") && !obj.contains("inf"));
    let vcount = obj.lines().filter(|l| l.starts_with("v ")).count();
    assert_eq!(vcount, 64);
    // faces are 1-indexed triangles within range
    for line in obj.lines().filter(|l| l.starts_with("f ")) {
        let idx: Vec<usize> = line[2..].split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(idx.len(), 3);
        assert!(idx.iter().all(|&i| i >= 1 && i <= vcount));
    }
    assert_eq!(
        obj.lines().filter(|l| l.starts_with("f ")).count(),
        7 * 7 * 2
    );

    let sidecar = std::fs::read_to_string(dir.path().join("sphere.csv")).unwrap();
    assert!(sidecar.starts_with("u,v,p1,p2,p3,h,"));
    let cols = parse_csv(&sidecar);
    // chart columns: unit directions and heights at log radius 0
    #[allow(clippy::needless_range_loop)]
    for i in 0..cols["p1"].len() {
        let n = (cols["p1"][i].powi(2) + cols["p2"][i].powi(2) + cols["p3"][i].powi(2)).sqrt();
        assert!((n - 1.0).abs() < 1e-9);
        assert!(cols["h"][i].abs() < 1e-9);
    }
}

#[test]
fn mesh_inverted_catenoid_is_finite() {
    let dir = tempfile::tempdir().unwrap();
    let obj_path = dir.path().join("cat.obj");
    let out = run(&[
        "mesh",
        "--factor",
        "radial",
        "--surface",
        r#"{"name":"catenoid"}"#,
        "--grid",
        "12x12",
        "--map",
        "inversion",
        "--out",
        obj_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let obj = std::fs::read_to_string(&obj_path).unwrap();
    assert!(!obj.contains("NaN") && !obj.contains("inf"));
    // inversion image of the catenoid is bounded
    for line in obj.lines().filter(|l| l.starts_with("v ")) {
        let xyz: Vec<f64> = line[2..].split(' ').map(|t| t.parse().unwrap()).collect();
        let r = (xyz[0].powi(2) + xyz[1].powi(2) + xyz[2].powi(2)).sqrt();
        assert!(r <= 1.0 + 1e-12, "vertex radius {r}");
    }
}

#[test]
fn mesh_flat_plane_grid() {
    let dir = tempfile::tempdir().unwrap();
    let obj_path = dir.path().join("plane.obj");
    let out = run(&[
        "mesh",
        "--factor",
        "euclidean",
        "--surface",
        r#"{"name":"plane","params":{"normal":[0,0,1]}}"#,
        "--grid",
        "5x5",
        "--map",
        "none",
        "--out",
        obj_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let obj = std::fs::read_to_string(&obj_path).unwrap();
    for line in obj.lines().filter(|l| l.starts_with("v ")) {
        let xyz: Vec<f64> = line[2..].split(' ').map(|t| t.parse().unwrap()).collect();
        assert!(xyz[2].abs() < 1e-12, "plane vertex off plane: {line}");
    }
}

#[test]
fn outputs_are_deterministic() {
    let args = [
        "curvature",
        "--factor",
        "radial",
        "--surface",
        r#"{"name":"enneper"}"#,
        "--grid",
        "6x6",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));

    // verify JSON is byte-identical under a pinned timestamp
    let verify = |seed: &str| -> String {
        let out = bin()
            .args(["verify", "--seed", seed])
            .env("SOURCE_DATE_EPOCH", "1700000000")
            .output()
            .unwrap();
        stdout(&out)
    };
    assert_eq!(verify("42"), verify("42"));
}

#[test]
fn config_file_drives_commands_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"factor": "radial", "surface": {"name": "catenoid"}, "grid": "4x4"}"#,
    )
    .unwrap();
    let out = run(&["curvature", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 16);

    // flag overrides the config grid
    let out = run(&[
        "curvature",
        "--config",
        path.to_str().unwrap(),
        "--grid",
        "6x6",
    ]);
    assert_eq!(stdout(&out).lines().count(), 1 + 36);
}

#[test]
fn output_file_writing_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("out.csv");
    let out = run(&[
        "curvature",
        "--surface",
        r#"{"name":"catenoid"}"#,
        "--grid",
        "3x3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(&path).exists());
}

#[test]
fn custom_polynomial_factor_is_accepted() {
    let out = run(&[
        "curvature",
        "--factor",
        "custom:poly:1,0.5",
        "--surface",
        r#"{"name":"catenoid"}"#,
        "--grid",
        "3x3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "curvature",
        "--factor",
        "custom:poly:",
        "--surface",
        r#"{"name":"catenoid"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}
