//! End-to-end checks of the command-line surface: spec parsing, exit codes,
//! deterministic output and the documented file formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_atomlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("atomlab-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn atoms_reports_symmetry_data() {
    let output = run(&["atoms", "--name", "triangle"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("aut = 6"), "{text}");
    assert!(text.contains("mu = 1"), "{text}");

    let output = run(&["atoms", "--name", "4-cycle", "--json"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["aut"], 8);
    assert_eq!(report["mu"], 3);
    assert_eq!(report["orbit_sizes"].as_array().unwrap().len(), 1);
}

#[test]
fn atoms_accepts_inline_spec_files() {
    let dir = temp_dir("inlineatom");
    let path = dir.join("atom.json");
    fs::write(
        &path,
        r#"{"name": "two-star", "order": 3, "edges": [[0, 1], [0, 2]]}"#,
    )
    .unwrap();
    let output = run(&["atoms", "--file", path.to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("aut = 2"), "{text}");
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn atoms_rejects_malformed_files() {
    let dir = temp_dir("badatom");
    let path = dir.join("atom.json");
    fs::write(&path, "{not json").unwrap();
    let output = run(&["atoms", "--file", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&["atoms", "--name", "no-such-atom"]);
    assert_eq!(output.status.code(), Some(2));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn entropy_of_fixed_edge_counts() {
    let dir = temp_dir("entropy");
    let spec = dir.join("spec.json");
    fs::write(
        &spec,
        r#"{"mode": "micro-counts", "n_vertices": 3, "atoms": ["edge"], "counts": {"edge": 2}}"#,
    )
    .unwrap();
    let output = run(&["entropy", "--spec", spec.to_str().unwrap(), "--json"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let entropy = report["entropy"].as_f64().unwrap();
    assert!((entropy - 3f64.ln()).abs() < 1e-9, "{entropy}");

    // bits conversion
    let output = run(&[
        "entropy",
        "--spec",
        spec.to_str().unwrap(),
        "--bits",
        "--json",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let bits = report["entropy"].as_f64().unwrap();
    assert!((bits - 3f64.ln() / 2f64.ln()).abs() < 1e-9);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn entropy_rejects_infeasible_specs_with_exit_3() {
    let dir = temp_dir("infeasible");
    let spec = dir.join("spec.json");
    fs::write(
        &spec,
        r#"{"mode": "micro-counts", "n_vertices": 3, "atoms": ["edge"], "counts": {"edge": 9}}"#,
    )
    .unwrap();
    let output = run(&["entropy", "--spec", spec.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));

    let bad = dir.join("bad.json");
    fs::write(&bad, "{").unwrap();
    let output = run(&["entropy", "--spec", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn named_model_entropy_matches_general_machinery() {
    let dir = temp_dir("named");
    let spec = dir.join("spec.json");
    fs::write(
        &spec,
        r#"{"mode": "named-model",
            "model": {"kind": "bipartite", "top": [2, 1, 1], "bottom": [1, 1, 1, 1]}}"#,
    )
    .unwrap();
    let output = run(&["entropy", "--spec", spec.to_str().unwrap(), "--json"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let closed = report["entropy"].as_f64().unwrap();
    let general = report["cross_check"].as_f64().unwrap();
    assert!((closed - general).abs() < 1e-9 * (1.0 + closed.abs()));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn sampling_is_byte_identical_for_equal_seeds() {
    let dir = temp_dir("sample");
    let spec = dir.join("spec.json");
    fs::write(
        &spec,
        r#"{"mode": "micro-degrees", "n_vertices": 8, "atoms": ["edge"],
            "degrees": [{"atom": "edge", "orbit": 0, "values": [2, 1, 1, 2, 1, 1, 2, 2]}]}"#,
    )
    .unwrap();
    let mut outputs = Vec::new();
    for run_dir in ["a", "b"] {
        let out = dir.join(run_dir);
        let output = run(&[
            "sample",
            "--spec",
            spec.to_str().unwrap(),
            "--seed",
            "1",
            "--samples",
            "5",
            "--project",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success());
        let mut bytes = Vec::new();
        for i in 0..5 {
            bytes.extend(fs::read(out.join(format!("sample_{i:05}.jsonl"))).unwrap());
            bytes.extend(fs::read(out.join(format!("sample_{i:05}.edges"))).unwrap());
        }
        outputs.push(bytes);
    }
    assert_eq!(outputs[0], outputs[1]);

    // metadata block records the stream identity
    let metadata: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("a/metadata.json")).unwrap()).unwrap();
    assert_eq!(metadata["seed"], 1);
    assert_eq!(metadata["algorithm"], "chacha12");
    assert_eq!(metadata["samples"], 5);
    assert!(metadata["spec_hash"].as_str().unwrap().len() == 16);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn sampling_respects_thread_cap_env() {
    let dir = temp_dir("threads");
    let spec = dir.join("spec.json");
    fs::write(
        &spec,
        r#"{"mode": "micro-degrees", "n_vertices": 8, "atoms": ["edge"],
            "degrees": [{"atom": "edge", "orbit": 0, "values": [2, 1, 1, 2, 1, 1, 2, 2]}]}"#,
    )
    .unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.join(format!("t{threads}"));
        let output = bin()
            .env("ATOMLAB_THREADS", threads)
            .args([
                "sample",
                "--spec",
                spec.to_str().unwrap(),
                "--seed",
                "9",
                "--samples",
                "6",
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(output.status.success());
        let mut bytes = Vec::new();
        for i in 0..6 {
            bytes.extend(fs::read(out.join(format!("sample_{i:05}.jsonl"))).unwrap());
        }
        outputs.push(bytes);
    }
    assert_eq!(
        outputs[0], outputs[1],
        "thread count changed sampler output"
    );
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn sampler_exhaustion_exits_4() {
    let dir = temp_dir("exhaust");
    let spec = dir.join("spec.json");
    // one vertex holding both stubs of a single edge always self-matches
    fs::write(
        &spec,
        r#"{"mode": "micro-degrees", "n_vertices": 3, "atoms": ["edge"],
            "degrees": [{"atom": "edge", "orbit": 0, "values": [2, 0, 0]}]}"#,
    )
    .unwrap();
    let output = run(&[
        "sample",
        "--spec",
        spec.to_str().unwrap(),
        "--seed",
        "1",
        "--max-restarts",
        "25",
    ]);
    assert_eq!(output.status.code(), Some(4));
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn validate_small_suite_passes() {
    let output = run(&["validate", "--suite", "small"]);
    assert!(output.status.success(), "{}", stdout(&output));
    let text = stdout(&output);
    assert!(text.contains("all"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}
