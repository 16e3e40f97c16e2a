use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cone-spanner"));
    c.env_remove("CONE_SPANNER_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn full_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (pts, graph, report, svg) = (
        path(dir.path(), "p.txt"),
        path(dir.path(), "g.json"),
        path(dir.path(), "r.json"),
        path(dir.path(), "f.svg"),
    );
    assert_eq!(
        run(&["gen", "--family", "nonconvex", "--n", "4", "-o", &pts])
            .status
            .code(),
        Some(0)
    );
    assert!(fs::read_to_string(&pts).unwrap().contains("# label d_4"));
    assert_eq!(
        run(&[
            "build",
            "--family",
            "thetatheta",
            "--k",
            "6",
            "-i",
            &pts,
            "-o",
            &graph
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&["analyze", "-i", &graph, "--directed", "-o", &report])
            .status
            .code(),
        Some(0)
    );
    let doc: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["family"], "thetatheta");
    assert_eq!(doc["n"], 16);
    assert_eq!(doc["analysis"]["directedness"], "directed");
    assert_eq!(doc["analysis"]["crossing_count"], 0);
    assert_eq!(
        run(&["render", "-i", &report, "--cones-at", "0", "-o", &svg])
            .status
            .code(),
        Some(0)
    );
    let drawing = fs::read_to_string(&svg).unwrap();
    assert_eq!(drawing.matches("<circle ").count(), 16);
    assert!(drawing.contains(">a_1</text>"));
}

#[test]
fn single_point_gives_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    let pts = path(dir.path(), "one.txt");
    fs::write(&pts, "0.25 0.5\n").unwrap();
    let out = run(&["build", "--family", "thetatheta", "--k", "6", "-i", &pts]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["edges"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_suites_report_json() {
    let out = run(&["verify", "--suite", "convex-lower"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], true);
    let ratio = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "ratio")
        .unwrap();
    assert!(ratio["measured"].as_f64().unwrap() >= 3.99);

    let out = run(&["verify", "--suite", "nonconvex", "--n", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let check = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "path-distance")
        .unwrap();
    assert!(check["measured"].as_f64().unwrap() > 0.99 * 19.0);

    let out = run(&[
        "verify", "--suite", "oracle", "--trials", "3", "--seed", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["seed"].is_u64()));
}

#[test]
fn exit_codes() {
    let out = run(&["gen", "--family", "molla", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["gen", "--family", "molla", "--alpha", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--threads", "0", "verify", "--suite", "convex-lower"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "build",
            "--family",
            "theta",
            "-i",
            "/nonexistent/points.txt"
        ])
        .status
        .code(),
        Some(3)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.txt");
    fs::write(&bad, "0 0\n1 x\n").unwrap();
    let out = run(&["build", "--family", "theta", "-i", &bad]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn seed_comes_from_environment_unless_overridden() {
    let gen = |env: Option<&str>, flag: Option<&str>| {
        let mut c = bin();
        c.args(["gen", "--family", "random", "--n", "5"]);
        if let Some(s) = flag {
            c.args(["--seed", s]);
        }
        if let Some(e) = env {
            c.env("CONE_SPANNER_SEED", e);
        }
        let out = c.output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    assert_eq!(gen(Some("7"), None), gen(None, Some("7")));
    assert_ne!(gen(Some("7"), None), gen(None, None));
    assert_eq!(gen(Some("7"), Some("3")), gen(None, Some("3")));
}
