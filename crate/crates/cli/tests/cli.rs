use std::process::{Command, Output};

use serde_json::Value;

fn msoct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msoct"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn parabolic_case_report() {
    let out = msoct(&["case", "--a", "1", "--x1", "1.7", "--x2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "msoct-report/1");
    assert_eq!(v["case"]["kind"], "parabolic");
    assert!((v["extrema"]["tau"].as_f64().unwrap() - 0.121766).abs() < 5e-6);
    assert!((v["extrema"]["d_tau"].as_f64().unwrap() - 18.6065).abs() < 5e-4);
    assert!(v["extrema"]["M"].is_null());
    assert_eq!(v["criticality"]["passes"], true);
}

#[test]
fn elliptic_case_from_y() {
    let out = msoct(&["case", "--y", "0.5", "--x1", "2", "--x2", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["case"]["kind"], "elliptic");
    assert!((v["extrema"]["M"].as_f64().unwrap() - 3.85532).abs() < 5e-5);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["case", "--a", "1", "--x1", "3", "--x2", "1.7"][..],
        &["case", "--a", "1", "--y", "0.5"],
        &["case"],
        &["pair", "--a", "1", "--d", "18.6"],
        &["pair", "--a", "1", "--d", "29.051"],
    ] {
        let out = msoct(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn parabolic_pair_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let out = msoct(&[
        "pair",
        "--a",
        "1",
        "--d",
        "20",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let on_disk = std::fs::read(&path).unwrap();
    assert_eq!(on_disk, out.stdout);
    let v = json(&out);
    let pair = &v["pair"];
    assert_eq!(pair["certificate"]["verdict"], "not_equivalent");
    assert_eq!(pair["packings"][0]["passes"], true);
    assert_eq!(pair["packings"][1]["passes"], true);
    assert!(pair["t"].as_f64().unwrap() < v["extrema"]["tau"].as_f64().unwrap());
}

#[test]
fn pair_outside_packing_interval_exits_one() {
    // At this level the second member of the hyperbolic pair has left the
    // interval where the lifted configurations pack.
    let out = msoct(&[
        "pair",
        "--y",
        "0.5",
        "--flow",
        "hyperbolic",
        "--x1",
        "2.11803",
        "--x2",
        "4.06155",
        "--d",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pair"]["packings"][1]["passes"], false);
}

#[test]
fn reports_are_deterministic() {
    let args = ["pair", "--a", "1", "--d", "20"];
    assert_eq!(msoct(&args).stdout, msoct(&args).stdout);
}

fn figure(kind: &str, dir: &std::path::Path) -> String {
    let path = dir.join(format!("{kind}.svg"));
    let out = msoct(&[
        "figure",
        "--a",
        "1",
        "--kind",
        kind,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn flow_figure_element_counts() {
    let dir = tempfile::tempdir().unwrap();
    let svg = figure("flow", dir.path());
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains("width=\"1000\" height=\"1000\""));
    assert_eq!(svg.matches("class=\"base\"").count(), 3);
    assert_eq!(
        svg.matches("class=\"flowed\"").count(),
        msoct_cli::svg::FLOW_SAMPLES
    );
    assert_eq!(svg.matches("class=\"envelope\"").count(), 2);
}

#[test]
fn graph_figure_marks_extrema() {
    let dir = tempfile::tempdir().unwrap();
    let svg = figure("graph", dir.path());
    assert!(svg.contains("data-label=\"tau\" data-t=\"0.121766336763\""));
    assert!(svg.contains("data-label=\"m\" data-t=\"0.866025403784\""));
    assert!(!svg.contains("data-label=\"M\""));
}

#[test]
fn figures_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for kind in ["flow", "graph", "sphere"] {
        assert_eq!(figure(kind, a.path()), figure(kind, b.path()), "{kind}");
    }
}

#[test]
fn sphere_figure_draws_every_cap_and_edge() {
    let dir = tempfile::tempdir().unwrap();
    let svg = figure("sphere", dir.path());
    for name in ["u", "v", "w", "u'", "v'", "w'"] {
        assert!(
            svg.contains(&format!("class=\"cap front\" data-vertex=\"{name}\""))
                || svg.contains(&format!("class=\"cap back\" data-vertex=\"{name}\""))
        );
    }
    let edges: std::collections::HashSet<&str> = svg
        .match_indices("class=\"edge ")
        .map(|(i, _)| {
            let rest = &svg[i..];
            let start = rest.find("data-vertex=\"").unwrap() + 13;
            let end = start + rest[start..].find('"').unwrap();
            &rest[start..end]
        })
        .collect();
    assert_eq!(edges.len(), 12);
}

#[test]
fn failed_figure_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("f.svg");
    let out = msoct(&["figure", "--a", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!path.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}
