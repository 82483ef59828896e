use std::path::Path;
use std::process::{Command, Output};

fn origon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origon")).args(args).env_remove("ORIGON_ANGLE_EPS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn improved_cube_writes_fold_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (fold, svg) = (dir.path().join("cube.fold"), dir.path().join("cube.svg"));
    let o = origon(&[
        "improved",
        "--alpha",
        "90",
        "--beta-l",
        "90",
        "--beta-r",
        "90",
        "--select",
        "orthogonal",
        "--out",
        p(&fold),
        "--svg",
        p(&svg),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&fold).unwrap()).unwrap();
    assert_eq!(doc["file_spec"], 1.1);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));

    let o = origon(&["check-cp", p(&fold)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn optimize_prism_square_row() {
    let o = origon(&["optimize-prism", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("0.7061") && out.contains("0.4046") && out.contains("0.9397") && out.contains("0.7071"),
        "{out}"
    );

    let o = origon(&["optimize-prism", "--n", "4,6", "--csv"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("n,kappa_min,"));
    assert!(lines[1].starts_with("4,0.7061"));
}

#[test]
fn check_names_the_violated_condition() {
    let o = origon(&["check", "--alpha", "90", "--beta-l", "30", "--beta-r", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] sides-exceed-top"));
    let o = origon(&["check", "--alpha", "90", "--beta-l", "90", "--beta-r", "90", "--construction", "conventional"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(origon(&["improved", "--alpha", "90", "--bogus"]).status.code(), Some(2));
    assert_eq!(origon(&["improved", "--alpha", "90", "--beta-l", "90", "--beta-r", "90"]).status.code(), Some(2));
    assert_eq!(
        origon(&[
            "improved", "--alpha", "90", "--beta-l", "90", "--beta-r", "90", "--phi-l", "40", "--select", "balanced"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        origon(&[
            "divide", "--alpha", "90", "--beta-l", "45", "--beta-r", "120", "--d", "3", "--phi-l", "18", "--invert",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_origon"))
        .args(["critical-angles", "--alpha", "90", "--beta-l", "90", "--beta-r", "90"])
        .env("ORIGON_ANGLE_EPS", "nope")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inadmissible_tongue_fails() {
    let o = origon(&["improved", "--alpha", "90", "--beta-l", "90", "--beta-r", "90", "--phi-l", "80"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not admissible"));
}

#[test]
fn divide_asymmetric_example() {
    let dir = tempfile::tempdir().unwrap();
    let fold = dir.path().join("div.fold");
    let o = origon(&[
        "divide",
        "--alpha",
        "90",
        "--beta-l",
        "45",
        "--beta-r",
        "120",
        "--d",
        "3",
        "--ratios",
        "1,1,1",
        "--phi-l",
        "18",
        "--out",
        p(&fold),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("2.4004") && out.contains("3.4625") && out.contains("1.0629"), "{out}");
    assert_eq!(origon(&["check-cp", p(&fold)]).status.code(), Some(0));

    let o = origon(&[
        "divide",
        "--alpha",
        "90",
        "--beta-l",
        "45",
        "--beta-r",
        "120",
        "--d",
        "3",
        "--phi-l",
        "18",
        "--phi-level",
        "3=20",
        "--invert",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("tongue 20.000000 deg"));
}

#[test]
fn other_subcommands() {
    let o = origon(&["conventional", "--alpha", "90", "--beta-l", "90", "--beta-r", "90"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("8 mountain, 7 valley"));
    let o = origon(&["critical-angles", "--alpha", "90", "--beta-l", "45", "--beta-r", "120"]);
    assert!(stdout(&o).contains("twice critical: L 43.061"));
    let o = origon(&["interference", "--alpha", "90", "--beta-l", "90", "--beta-r", "90", "--select", "left-critical"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("inner 0.250000000"));
    let o = origon(&["improved", "--alpha", "90", "--beta-l", "90", "--beta-r", "90", "--epsilon", "L:10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("slack: L 10.000000"));
    let o = origon(&[
        "improved",
        "--alpha",
        "90",
        "--beta-l",
        "100",
        "--beta-r",
        "95",
        "--delta-l",
        "5",
        "--psi-l",
        "0",
        "--variant",
        "alternate",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn export_and_broken_files() {
    let dir = tempfile::tempdir().unwrap();
    let fold = dir.path().join("c.fold");
    origon(&["conventional", "--alpha", "90", "--beta-l", "90", "--beta-r", "90", "--out", p(&fold)]);
    let again = dir.path().join("again.fold");
    let svg = dir.path().join("c.svg");
    let o = origon(&["export", p(&fold), "--out", p(&again), "--svg", p(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&fold).unwrap(), std::fs::read(&again).unwrap());
    let o = origon(&["export", p(&fold)]);
    assert!(stdout(&o).starts_with("<?xml"));

    let bad = dir.path().join("bad.fold");
    std::fs::write(&bad, "{\"file_spec\": 1.1}").unwrap();
    assert_eq!(origon(&["check-cp", p(&bad)]).status.code(), Some(1));
    assert_eq!(origon(&["check-cp", p(&dir.path().join("missing.fold"))]).status.code(), Some(1));
}
