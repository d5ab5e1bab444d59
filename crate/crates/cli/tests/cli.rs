use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_signedflips"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_fixtures(cmd: &str, files: &[&str], extra: &[&str]) -> Output {
    let paths: Vec<String> = files.iter().map(|f| fixture(f).display().to_string()).collect();
    let mut args = vec![cmd];
    args.extend(paths.iter().map(String::as_str));
    args.extend_from_slice(extra);
    run(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_example1_is_not_signable() {
    let o = run_fixtures("check", &["example1.json"], &["--oracle"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("NOT-SIGNABLE\n"));
    assert!(out.contains("odd cycle of length 5"));
    assert!(out.contains("oracle: agrees"));
}

#[test]
fn check_example2_writes_signed_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("signed.json");
    let o = run_fixtures(
        "check",
        &["example2.json"],
        &["--oracle", "--output", out_path.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "SIGNABLE\noracle: agrees\n");
    let text = std::fs::read_to_string(&out_path).unwrap();
    let ss = signedflips::json::parse_signed_sequence(&text).unwrap();
    assert_eq!(ss.steps().len(), 7);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        v["steps"][0][0],
        serde_json::json!({"sign": "-", "triangle": [1, 2, 7]})
    );
}

#[test]
fn malformed_input_exits_2_with_position() {
    let o = run_fixtures("check", &["malformed.json"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = run(&["check", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn graph_dot_exports() {
    let o = run_fixtures("graph", &["example1.json"], &["--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.matches("[label=").count(), 5);
    assert_eq!(dot.matches(" -- ").count(), 5);
    assert!(!dot.contains("fillcolor"));

    let dot = stdout(&run_fixtures("graph", &["example2.json"], &[]));
    assert_eq!(dot.matches("[label=").count(), 6);
    assert_eq!(dot.matches(" -- ").count(), 7);
    assert_eq!(dot.matches("fillcolor=lightblue").count(), 3);
    assert_eq!(dot.matches("fillcolor=salmon").count(), 3);

    let dot = stdout(&run_fixtures("graph", &["square_flip.json"], &[]));
    assert_eq!(dot.matches("[label=").count(), 1);
    assert_eq!(dot.matches(" -- ").count(), 0);
}

#[test]
fn graph_json_export() {
    let o = run_fixtures("graph", &["example2.json"], &["--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["coloring"], serde_json::json!([1, 2, 1, 2, 1, 2]));
}

#[test]
fn paths() {
    let o = run_fixtures("path", &["square_a.json", "square_b.json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = signedflips::json::parse_flip_sequence(&stdout(&o)).unwrap();
    assert_eq!(s.len(), 1);

    let o = run_fixtures(
        "path",
        &["heptagon_start.json", "example1_end.json"],
        &["--signable", "--max-len", "8"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = signedflips::json::parse_flip_sequence(&stdout(&o)).unwrap();
    assert!(signedflips::is_signable(&s).unwrap().is_signable());

    let o = run_fixtures(
        "path",
        &["heptagon_start.json", "example1_end.json"],
        &["--signable", "--max-len", "1"],
    );
    assert_eq!(o.status.code(), Some(1));

    let o = run_fixtures("path", &["square_a.json", "pentagon.json"], &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fill_dispatches_on_dimension() {
    let o = run_fixtures("fill", &["hexagon.json", "hexagon_colors.json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let disk = signedflips::json::parse_complex(&stdout(&o)).unwrap();
    assert_eq!((disk.dim(), disk.len()), (2, 4));

    let o = run_fixtures("fill", &["tetrahedron.json", "tetrahedron_colors.json"], &[]);
    let ball = signedflips::json::parse_complex(&stdout(&o)).unwrap();
    assert_eq!(
        ball.facets().iter().cloned().collect::<Vec<_>>(),
        vec![vec![1, 2, 3, 4]]
    );

    let o = run_fixtures("fill", &["hexagon.json", "hexagon_two_colors.json"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("strict"));
}

#[test]
fn moves_of_the_octahedron() {
    let o = run_fixtures("moves", &["octahedron.json", "octahedron_colors.json"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["moves"].as_array().unwrap().len(), 3);

    let o = run_fixtures("moves", &["tetrahedron.json", "tetrahedron_colors.json"], &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["moves"], serde_json::json!([]));
    assert_eq!(v["seed"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn enumerate_counts_and_samples() {
    let v: Value = serde_json::from_str(&stdout(&run(&["enumerate", "7"]))).unwrap();
    assert_eq!(v["count"], 42);
    assert_eq!(v["triangulations"].as_array().unwrap().len(), 42);
    let a = stdout(&run(&["enumerate", "7", "--sample", "3", "--seed", "9"]));
    let b = stdout(&run(&["enumerate", "7", "--sample", "3", "--seed", "9"]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["triangulations"].as_array().unwrap().len(), 3);
    assert_eq!(run(&["enumerate", "15"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = run_fixtures("check", &["example2.json"], &[]);
    let b = run_fixtures("check", &["example2.json"], &[]);
    assert_eq!(a.stdout, b.stdout);
}
