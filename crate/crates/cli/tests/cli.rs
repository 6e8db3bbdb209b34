use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect()
}

fn pcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcs"))
        .args(args)
        .output()
        .unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn run_ok(args: &[&str]) -> Value {
    let out = pcs(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> (i32, Value) {
    let out = pcs(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), doc)
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn law(doc: &Value, state: &str) -> Vec<(String, f64)> {
    let entry = doc["uniform"]["first_clique"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["state"] == state)
        .unwrap();
    entry["law"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["clique"].as_str().unwrap().to_string(),
                e["p"].as_str().unwrap().parse().unwrap(),
            )
        })
        .collect()
}

#[test]
fn analyze_reports_the_uniform_measure_of_s2() {
    let doc = run_ok(&[
        "analyze",
        path_str(&fixture("S2.json")),
        "--uniform",
        "--dcs",
    ]);
    assert_eq!(doc["root"]["exact"], "1/2");
    assert_eq!(
        doc["uniform"]["null_nodes"],
        serde_json::json!([["α0", "d"]])
    );
    let law = law(&doc, "α0");
    for (c, p) in law {
        let want = if c == "d" { 0.0 } else { 0.25 };
        assert_eq!(p, want, "{c}");
    }
    assert_eq!(doc["dcs"]["deterministic"], false);
    assert_eq!(doc["dcs"]["consistent"], true);
}

#[test]
fn analyze_reports_the_first_clique_law_of_s1() {
    let doc = run_ok(&[
        "analyze",
        path_str(&fixture("S1.json")),
        "--uniform",
        "--spectral",
    ]);
    let law = law(&doc, "0000");
    assert_eq!(law.len(), 6);
    for (c, p) in law {
        let want = if c.contains('·') { 0.219 } else { 0.140 };
        assert!((p - want).abs() < 5e-4, "{c}: {p}");
    }
    assert!(doc["uniform"]["null_nodes"].as_array().unwrap().is_empty());
    assert!(doc["spectral"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["strict"] == true));
}

#[test]
fn growth_matrices_are_included_on_request() {
    let doc = run_ok(&["analyze", path_str(&fixture("M2.json")), "--order", "3"]);
    let counts: Vec<&str> = doc["growth"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g[0][0].as_str().unwrap())
        .collect();
    assert_eq!(counts, ["1", "4", "14", "48"]);
}

#[test]
fn malformed_inputs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(
        &dir,
        "dup.json",
        r#"{"monoid":{"alphabet":["a"],"independence":[]},"states":["0"],
            "action":[{"from":"0","letter":"a","to":"0"},{"from":"0","letter":"a","to":"0"}]}"#,
    );
    assert_eq!(exit_code(&["analyze", path_str(&dup)]).0, 2);
    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(exit_code(&["analyze", path_str(&garbage)]).0, 2);
    assert_eq!(
        exit_code(&["analyze", path_str(&dir.path().join("missing.json"))]).0,
        2
    );
    let out = pcs(&[
        "export-dot",
        path_str(&fixture("S2.json")),
        "--graph",
        "nope",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn incoherent_action_exits_with_code_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"monoid":{"alphabet":["a","b"],"independence":[["a","b"]]},"states":["0","1"],
            "action":[{"from":"0","letter":"a","to":"1"},{"from":"1","letter":"b","to":"1"}]}"#,
    );
    let (code, doc) = exit_code(&["analyze", path_str(&bad)]);
    assert_eq!(code, 3);
    assert_eq!(doc["exit_code"], 3);
    assert!(doc["witness"].is_object());
}

#[test]
fn non_probabilistic_valuation_exits_with_code_four() {
    let dir = tempfile::tempdir().unwrap();
    let weights: Vec<String> = [
        ("α0", "a"),
        ("α0", "b"),
        ("α0", "d"),
        ("α1", "c"),
        ("α1", "d"),
    ]
    .iter()
    .map(|(s, l)| format!(r#"{{"state":"{s}","letter":"{l}","value":"0.1"}}"#))
    .collect();
    let v = write(
        &dir,
        "v.json",
        &format!(r#"{{"weights":[{}]}}"#, weights.join(",")),
    );
    let (code, doc) = exit_code(&[
        "simulate",
        path_str(&fixture("S2.json")),
        "--state",
        "α0",
        "--valuation",
        path_str(&v),
    ]);
    assert_eq!(code, 4);
    assert!(doc["witness"]["state"].is_string());
}

#[test]
fn unsafe_net_exits_with_code_five() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(
        &dir,
        "net.json",
        r#"{"places":["A","B"],"transitions":[{"name":"t","pre":["A"],"post":["B"]}],"initial":["A","B"]}"#,
    );
    let (code, doc) = exit_code(&["petri", path_str(&net)]);
    assert_eq!(code, 5);
    assert!(doc["witness"].is_object());
}

#[test]
fn simulation_is_reproducible_for_a_seed() {
    let s2 = fixture("S2.json");
    let args = [
        "simulate",
        path_str(&s2),
        "--state",
        "α0",
        "--steps",
        "30",
        "--seed",
        "7",
    ];
    let a = pcs(&args);
    let b = pcs(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    let nodes = doc["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 30);
    assert!(nodes.iter().all(|n| n[1] != "d"));
}

#[test]
fn dominant_simulation_of_s3_cycles_with_period_four() {
    let doc = run_ok(&[
        "simulate",
        path_str(&fixture("S3.json")),
        "--state",
        "0",
        "--steps",
        "12",
        "--valuation",
        "dominant",
    ]);
    let nodes = doc["nodes"].as_array().unwrap();
    let states: Vec<&str> = nodes.iter().map(|n| n[0].as_str().unwrap()).collect();
    assert_eq!(&states[..4], ["0", "3", "7", "8"]);
    for i in 4..nodes.len() {
        assert_eq!(nodes[i], nodes[i - 4]);
    }
}

fn dot_nodes(text: &str) -> Vec<&str> {
    text.lines()
        .map(str::trim)
        .filter(|l| l.starts_with('"') && !l.contains("->"))
        .collect()
}

#[test]
fn dot_exports_have_the_expected_nodes() {
    let out = pcs(&["export-dot", path_str(&fixture("S2.json")), "--graph", "sc"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(dot_nodes(&text).len(), 7);

    let out = pcs(&[
        "export-dot",
        path_str(&fixture("M2.json")),
        "--graph",
        "cliques",
    ]);
    assert_eq!(dot_nodes(&String::from_utf8(out.stdout).unwrap()).len(), 6);

    let out = pcs(&[
        "export-dot",
        path_str(&fixture("S3.json")),
        "--graph",
        "sc",
        "--mark-null",
        "dominant",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let nodes = dot_nodes(&text);
    let dashed = nodes.iter().filter(|l| l.contains("dashed")).count();
    assert_eq!((nodes.len() - dashed, dashed), (9, 6));

    for graph in ["coxeter", "states"] {
        let out = pcs(&[
            "export-dot",
            path_str(&fixture("S1.json")),
            "--graph",
            graph,
        ]);
        assert!(out.status.success(), "{graph}");
    }
}

#[test]
fn petri_net_round_trips_to_the_two_state_system() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("induced.json");
    let doc = run_ok(&[
        "petri",
        path_str(&fixture("fig6.json")),
        "--to-system",
        path_str(&out_path),
    ]);
    assert_eq!(doc["marking_count"], 2);
    assert_eq!(
        doc["independence"],
        serde_json::json!([["a", "d"], ["b", "d"]])
    );
    let induced = run_ok(&["analyze", path_str(&out_path), "--uniform"]);
    let direct = run_ok(&["analyze", path_str(&fixture("S2.json")), "--uniform"]);
    assert_eq!(induced, direct);
}
