//! End-to-end tests of the command line binary: output formats, the exit
//! code contract, and byte-for-byte determinism of written artifacts.

use std::process::{Command, Output};

fn disknorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disknorm"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn eval_prints_fifteen_digit_values() {
    let out = disknorm(&["eval", "--expr", "1/(1-z)", "--at", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "2.000000000000000\n");
}

#[test]
fn parse_errors_exit_two_and_name_the_column() {
    let out = disknorm(&["eval", "--expr", "1/(1-z", "--at", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("column"),
        "stderr should locate the error: {}",
        stderr(&out)
    );
}

#[test]
fn malformed_grid_specs_exit_two() {
    let out = disknorm(&["dump", "--h", "z", "--grid", "0x4"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn evaluation_errors_exit_three() {
    let out = disknorm(&["eval", "--expr", "1/(1-z)", "--at", "1"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}

#[test]
fn map_validation_errors_exit_four() {
    // A constant dilatation of modulus 1.5 is never sense-preserving.
    let out = disknorm(&["norm", "--kind", "hyperbolic", "--omega", "1.5"]);
    assert_eq!(out.status.code(), Some(4), "stderr: {}", stderr(&out));

    // And a dilatation target only supports the hyperbolic kind.
    let out = disknorm(&["norm", "--omega", "0.5*z"]);
    assert_eq!(out.status.code(), Some(4), "stderr: {}", stderr(&out));
}

#[test]
fn dump_emits_csv_with_header_and_requested_shape() {
    let out = disknorm(&["dump", "--h", "1/(1-z)", "--grid", "1x1"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "r,theta,value");
    // Single cell sits at the origin, where (1-r^2)|h''/h'| = 2 for 1/(1-z).
    let fields: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(fields[0], 0.0);
    assert_eq!(fields[1], 0.0);
    assert!((fields[2] - 2.0).abs() < 1e-12, "value {}", fields[2]);
}

#[test]
fn dump_covers_catalog_maps_on_the_full_grid() {
    let out = disknorm(&["dump", "--catalog", "thm31_ex1", "--grid", "24x128"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 24 * 128);

    let mut max = f64::NEG_INFINITY;
    for line in &lines[1..] {
        let value: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(value.is_finite(), "unexpected gap in {line}");
        max = max.max(value);
    }
    // The weighted pre-Schwarzian of this map tops out at 5; a grid clipped
    // at r = 0.999 sees it slightly from below.
    assert!((4.99..=5.0001).contains(&max), "grid max {max}");
}

#[test]
fn norm_writes_deterministic_json_reports() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| -> serde_json::Value {
        let path = dir.path().join(name);
        let out = disknorm(&[
            "norm",
            "--catalog",
            "thm31_ex1",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
        let text = stdout(&out);
        let printed: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("value"))
            .and_then(|rest| rest.trim().parse().ok())
            .unwrap_or_else(|| panic!("no value line in {text:?}"));
        assert!((printed - 5.0).abs() < 1e-3, "printed estimate {printed}");
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
    };

    let mut first = run("a.json");
    let mut second = run("b.json");
    let value = first["estimate"]["value"].as_f64().unwrap();
    assert!((value - 5.0).abs() < 1e-3, "norm estimate {value}");
    assert_eq!(first["manifest"]["command"], "norm");

    strip_timings(&mut first);
    strip_timings(&mut second);
    assert_eq!(first, second, "reports differ between identical runs");
}

#[test]
fn verify_value_suite_passes_cleanly() {
    let out = disknorm(&["verify", "--suite", "paper"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stdout: {}\nstderr: {}",
        stdout(&out),
        stderr(&out)
    );
    assert!(stdout(&out).contains("pass"), "{}", stdout(&out));
}

/// Remove wall-clock fields so identical runs compare equal.
fn strip_timings(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("wall_ms");
            map.remove("runtime_ms");
            for child in map.values_mut() {
                strip_timings(child);
            }
        }
        serde_json::Value::Array(items) => {
            for child in items {
                strip_timings(child);
            }
        }
        _ => {}
    }
}
