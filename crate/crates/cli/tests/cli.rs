use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn ps12(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ps12"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn eval_corner_value_and_outside() {
    let o = ps12(&[
        "eval",
        "--triangle",
        "0,0,1,0,0,1",
        "--basis",
        "corner1",
        "--point",
        "0,0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x,y,value\n0.0,0.0,1.0\n");
    let o = ps12(&["eval", "--basis", "corner1", "--point", "2,2"]);
    assert_eq!(csv_rows(&o)[0][2], "0.0");
}

#[test]
fn eval_grid_row_count() {
    let o = ps12(&["eval", "--mult", "1101110000", "--grid", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 50 * 51 / 2);
    assert!(rows.iter().all(|r| r[2].parse::<f64>().unwrap() >= 0.0));
}

#[test]
fn eval_points_file_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.txt");
    std::fs::write(&pts, "# points\n0.2 0.2\n0.1,0.3\n").unwrap();
    let out = dir.path().join("out.json");
    let o = ps12(&[
        "eval",
        "--basis",
        "interior4",
        "--points",
        pts.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["rows"][1]["x"], 0.1);
}

#[test]
fn eval_usage_errors() {
    for args in [
        vec!["eval", "--basis", "corner9", "--point", "0,0"],
        vec!["eval", "--basis", "corner1"],
        vec!["eval", "--basis", "corner1", "--point", "0"],
        vec!["eval", "--mult", "12x", "--point", "0,0"],
        vec![
            "eval",
            "--basis",
            "corner1",
            "--point",
            "0,0",
            "--triangle",
            "0,0,0,1,1,0",
        ],
        vec!["eval", "--basis", "corner1", "--points", "/no/such/file"],
        vec!["eval", "--basis", "corner1", "--grid", "1"],
        vec!["frobnicate"],
    ] {
        let o = ps12(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
    }
}

#[test]
fn verify_suites() {
    let o = ps12(&["verify", "marsden", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    let marsden = rows.iter().find(|r| r[0] == "marsden_identity").unwrap();
    assert!(marsden[1].parse::<f64>().unwrap() <= 1e-12);
    assert_eq!(ps12(&["verify", "pou"]).status.code(), Some(0));

    let o = ps12(&["verify", "smoothness", "--h", "1e-5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(csv_rows(&o).iter().any(|r| r[0].contains("gradient_jump")));

    assert_eq!(ps12(&["verify", "nonsense"]).status.code(), Some(2));
    // an impossible tolerance turns into a quantitative failure
    assert_eq!(
        ps12(&["verify", "pou", "--tol", "0", "--samples", "200"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_is_deterministic() {
    let a = ps12(&["verify", "derivative", "--seed", "3", "--samples", "20"]);
    let b = ps12(&["verify", "derivative", "--seed", "3", "--samples", "20"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn quasi_examples() {
    let o = ps12(&["quasi", "--fn", "const:1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r[1] == "1.0"));

    let o = ps12(&["quasi", "--fn", "poly:x2+y2", "--check", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"][0]["max_error"].as_f64().unwrap() <= 1e-10);

    let o = ps12(&["quasi", "--fn", "poly:x3", "--check", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"][0]["max_error"].as_f64().unwrap() > 0.0);

    assert_eq!(ps12(&["quasi", "--fn", "sin:x"]).status.code(), Some(2));
}

#[test]
fn quasi_from_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = ps12(&["quasi", "--list-points", "--triangle", "0,0,2,0,0,2"]);
    let table: String = csv_rows(&o)
        .iter()
        .map(|r| {
            let (x, y): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
            format!("{x:?} {y:?} {:?}\n", x * y)
        })
        .collect();
    let path = dir.path().join("xy.txt");
    std::fs::write(&path, table).unwrap();
    let spec = format!("table:{}", path.display());
    let from_table = ps12(&["quasi", "--fn", &spec, "--triangle", "0,0,2,0,0,2"]);
    let from_poly = ps12(&["quasi", "--fn", "poly:xy", "--triangle", "0,0,2,0,0,2"]);
    assert_eq!(from_table.status.code(), Some(0));
    assert_eq!(from_table.stdout, from_poly.stdout);

    std::fs::write(&path, "0 0 1\n").unwrap();
    assert_eq!(ps12(&["quasi", "--fn", &spec]).status.code(), Some(2));
}

#[test]
fn mesh_dimensions() {
    for (name, dim) in [
        ("triangle.mesh", "12"),
        ("square.mesh", "17"),
        ("grid3.mesh", "43"),
    ] {
        let o = ps12(&["mesh-dim", &fixture(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let row = &csv_rows(&o)[0];
        assert_eq!(row[5], dim);
        assert_eq!(row[6], dim);
    }
    for bad in ["hanging.mesh", "flipped.mesh", "missing.mesh"] {
        assert_eq!(
            ps12(&["mesh-dim", &fixture(bad)]).status.code(),
            Some(2),
            "{bad}"
        );
    }
}

#[test]
fn convergence_examples() {
    let o = ps12(&[
        "convergence",
        "--fn",
        "poly:x3+y3",
        "--levels",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["slope"].as_f64().unwrap() >= 1.8);
    assert_eq!(v["levels"].as_array().unwrap().len(), 5);

    // x² is reproduced; its control distance still falls as h²
    let o = ps12(&["convergence", "--fn", "poly:x2", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# exact_reproduction: true"));
    assert!(stdout(&o).contains("exact reproduction; control-surface slope 2.0000"));

    let o = ps12(&["convergence", "--fn", "poly:2x-y+1", "--levels", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact reproduction; slope undefined"));

    let o = ps12(&["convergence", "--fn", "poly:x3+y3", "--levels", "2"]);
    assert_eq!(o.status.code(), Some(2));

    let o = ps12(&[
        "convergence",
        "--fn",
        "poly:x3",
        "--levels",
        "3",
        "--min-slope",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));

    let o = ps12(&[
        "convergence",
        "--fn",
        "poly:x3",
        "--levels",
        "3",
        "--mesh",
        &fixture("grid3.mesh"),
    ]);
    assert_eq!(o.status.code(), Some(0));
}
