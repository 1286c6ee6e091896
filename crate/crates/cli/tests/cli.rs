use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bitangents"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON error")
}

fn real_lines(doc: &Value) -> Vec<[f64; 3]> {
    doc["bitangents"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["real"].as_bool().unwrap())
        .map(|b| {
            let l = b["line"].as_array().unwrap();
            std::array::from_fn(|k| l[k][0].as_f64().unwrap())
        })
        .collect()
}

fn lines(doc: &Value) -> Vec<Vec<f64>> {
    doc["bitangents"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| {
            b["line"]
                .as_array()
                .unwrap()
                .iter()
                .flat_map(|c| [c[0].as_f64().unwrap(), c[1].as_f64().unwrap()])
                .collect()
        })
        .collect()
}

#[test]
fn solve_fermat_lists_four_real_lines() {
    let out = run(&["solve", "--type", "II"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["schemaVersion"], 1);
    assert_eq!(doc["bitangents"].as_array().unwrap().len(), 28);
    let real = real_lines(&doc);
    assert_eq!(real.len(), 4);
    for signs in [
        [1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [1.0, -1.0, 1.0],
        [1.0, -1.0, -1.0],
    ] {
        let found = real
            .iter()
            .any(|l| (0..3).all(|k| (l[k] - signs[k]).abs() < 1e-6));
        assert!(found, "{signs:?} not among {real:?}");
    }
    let hyperflex = doc["bitangents"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|b| b["hyperflex"].as_bool().unwrap())
        .count();
    assert_eq!(hyperflex, 12);
}

#[test]
fn explicit_coefficients_match_the_catalog() {
    let mut coeffs = vec!["0"; 30];
    // x^4, y^4, z^4
    for k in [0, 10, 14] {
        coeffs[2 * k] = "1";
    }
    let coeffs = coeffs.join(",");
    let a = json(&run(&["solve", "--coeffs", &coeffs]));
    let b = json(&run(&["solve", "--type", "II"]));
    assert_eq!(a["quartic"], b["quartic"]);
    let (mut la, mut lb) = (lines(&a), lines(&b));
    la.sort_by(|x, y| x.partial_cmp(y).unwrap());
    lb.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for (x, y) in la.iter().zip(&lb) {
        let d = x
            .iter()
            .zip(y)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        assert!(d < 1e-9);
    }
    assert!(a.get("type").is_none());
}

#[test]
fn type_five_at_minus_four_has_eight_real_lines() {
    let out = run(&["solve", "--type", "V", "--params", "a=-4"]);
    assert!(out.status.success());
    assert_eq!(real_lines(&json(&out)).len(), 8);
}

#[test]
fn solve_output_round_trips_through_orbits() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("iv.json");
    let p = path.to_str().unwrap();
    let out = run(&["solve", "--type", "IV", "--params", "a=-3", "--out", p]);
    assert!(out.status.success());
    let from_file = json(&run(&["orbits", "--from-json", p]));
    let direct = json(&run(&["orbits", "--type", "IV", "--params", "a=-3"]));
    assert_eq!(from_file["decomposition"], direct["decomposition"]);
    assert_eq!(from_file["orbits"], direct["orbits"]);
    assert_eq!(direct["decomposition"], "[S4/C2^e] + [S4/C2^o] + [S4/S3]");
}

#[test]
fn exit_codes() {
    let out = run(&["verify", "--type", "IV"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);

    let out = run(&["verify", "--type", "II"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);

    for args in [
        &["solve", "--type", "XIII"][..],
        &["solve", "--type", "V", "--params", "a=6"],
        &["solve", "--type", "V", "--params", "q=1"],
        &["solve", "--type", "II", "--tol-accept=-1"],
        &["solve", "--type", "II", "--bogus"],
        &["solve"],
        &["restrict", "--type", "IV"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert_eq!(stderr_json(&out)["error"]["kind"], "usage");
    }
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    // x^4 + y^4: singular at [0:0:1]
    let mut coeffs = vec!["0"; 30];
    coeffs[0] = "1";
    coeffs[20] = "1";
    let out = run(&["solve", "--coeffs", &coeffs.join(",")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["schemaVersion"], 1);
    assert_eq!(err["error"]["kind"], "math");
    assert!(err["error"]["details"].is_object());
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("solver.toml");
    std::fs::write(&path, "acceptTol = 1e-9\nmatchTol = 1e-6\nseed = 3\n").unwrap();
    let out = run(&["solve", "--type", "VI", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    std::fs::write(&path, "acceptTol = -1\n").unwrap();
    let out = run(&["solve", "--type", "VI", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let missing = dir.path().join("missing.toml");
    let out = run(&[
        "solve",
        "--type",
        "VI",
        "--config",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr_json(&out)["error"]["kind"], "io");
}

fn plot(args: &[&str], path: &Path) -> (Output, String) {
    let mut all = vec!["plot"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--grid", "128", "--out", path.to_str().unwrap()]);
    let out = run(&all);
    (out, std::fs::read_to_string(path).unwrap_or_default())
}

fn line_classes(svg: &str) -> (usize, usize) {
    let classes: Vec<&str> = svg
        .lines()
        .filter(|l| l.starts_with("<line class=\"orbit"))
        .map(|l| l.split('"').nth(1).unwrap())
        .collect();
    let mut distinct = classes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    (classes.len(), distinct.len())
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");

    let (out, svg) = plot(&["--type", "IV", "--params", "a=-3"], &a);
    assert!(out.status.success());
    assert!(svg.contains(r#"version="1.1""#));
    assert!(svg.contains(r#"id="curve""#));
    assert!(svg.contains("[S4/C2^o]"));
    assert_eq!(line_classes(&svg), (16, 2));
    let (_, again) = plot(&["--type", "IV", "--params", "a=-3"], &b);
    assert_eq!(svg, again);

    let (out, svg) = plot(&["--type", "VI"], &a);
    assert!(out.status.success());
    assert_eq!(line_classes(&svg), (4, 4));

    let (out, svg) = plot(&["--type", "III"], &a);
    assert_eq!(out.status.code(), Some(2));
    assert!(svg.contains(r#"id="warning""#));

    let (out, svg) = plot(
        &[
            "--type",
            "IV",
            "--params",
            "a=-3",
            "--window",
            "100,101,100,101",
        ],
        &a,
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(line_classes(&svg), (0, 0));
    assert!(svg.trim_end().ends_with("</svg>"));

    let (out, _) = plot(&["--type", "IV", "--window", "1,0,0,1"], &a);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn specialize_twelve_to_eight_is_infeasible() {
    let out = run(&["specialize", "--from", "XII", "--to", "VIII"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"], "Infeasible");
}

#[test]
fn restriction_of_the_edge_quartic() {
    let out = run(&[
        "restrict",
        "--type",
        "IV",
        "--params",
        "a=-1.36",
        "--subgroup-order",
        "8",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    let subgroups = doc["subgroups"].as_array().unwrap();
    assert_eq!(subgroups.len(), 1);
    assert_eq!(subgroups[0]["label"], "D8");
    assert_eq!(subgroups[0]["matches"], serde_json::json!(["VII"]));
    assert_eq!(
        subgroups[0]["decomposition"],
        "[D8/e] + 2[D8/C2^(1)] + 2[D8/C2^(2)] + [D8/C2^Z]"
    );

    let members: Vec<String> = subgroups[0]["members"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.to_string())
        .collect();
    let out = run(&[
        "restrict",
        "--type",
        "IV",
        "--params",
        "a=-1.36",
        "--generators",
        &members.join(","),
    ]);
    assert_eq!(
        json(&out)["subgroups"][0]["decomposition"],
        subgroups[0]["decomposition"]
    );
}

#[test]
fn catalog_lists_twelve_types() {
    let out = run(&["catalog"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 12);
    let out = run(&["catalog", "--type", "VII"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("[D8/e] + 2[D8/C2^(1)]"));
}
