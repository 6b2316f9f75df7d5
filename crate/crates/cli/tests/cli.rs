use std::path::{Path, PathBuf};
use std::process::Command;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn edr(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_edr"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("edr-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn parse_errors_name_file_line_and_column() {
    let (out, err, code) = edr(&["smith", "bad_entry.mat"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("bad_entry.mat: line 3, column 3"), "{err}");

    let p = scratch("ragged.mat", "ring int\n2 2\n1 2\n3\n");
    let (_, err, code) = edr(&["rank", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        err.contains("line 4") && err.contains("expected 2 entries, found 1"),
        "{err}"
    );
}

#[test]
fn large_transitions_are_suppressed_unless_full() {
    let n = 11;
    let mut text = format!("ring int\n{n} {n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| {
                if i == j {
                    (i + 1).to_string()
                } else {
                    "0".into()
                }
            })
            .collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    let p = scratch("big.mat", &text);
    let (out, _, code) = edr(&["smith", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("P: suppressed (11x11, use --full)"), "{out}");
    let (out, _, _) = edr(&["smith", "--full", p.to_str().unwrap()]);
    assert!(!out.contains("suppressed"));
    assert_eq!(out.lines().count(), 1 + 2 * (n + 1));
}

#[test]
fn stored_results_survive_a_round_trip_and_tampering_is_caught() {
    for fixture in ["diag23.mat", "rect.mat", "qpoly.mat", "fp5.mat"] {
        let (json, _, code) = edr(&["smith", "--json", fixture]);
        assert_eq!(code, 0);
        let stored = scratch(&format!("{fixture}.json"), &json);
        let (out, _, code) = edr(&["verify", fixture, stored.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("verified\n"));
    }
    let (json, _, _) = edr(&["smith", "--json", "diag23.mat"]);
    let tampered = scratch("tampered.json", &json.replacen("\"6\"", "\"12\"", 1));
    let (out, _, code) = edr(&["verify", "diag23.mat", tampered.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("product: FAILED"), "{out}");
}

#[test]
fn every_strategy_gives_the_same_factors() {
    let first = edr(&["smith", "--strategy", "euclidean", "rect.mat"]).0;
    for s in ["pid", "kaplansky"] {
        let out = edr(&["smith", "--strategy", s, "rect.mat"]).0;
        assert_eq!(out.lines().next(), first.lines().next());
    }
}

#[test]
fn each_reports_the_worst_exit_code() {
    let (out, err, code) = edr(&["rank", "--each", "z6.mat", "bad_entry.mat", "z4.mat"]);
    assert_eq!(code, 2);
    assert!(
        out.contains("== z6.mat ==\nrank: 1\n== bad_entry.mat ==\n== z4.mat ==\nrank: 1\n"),
        "{out}"
    );
    assert!(err.contains("bad_entry.mat"));
}

#[test]
fn mismatched_rings_and_arity_are_input_errors() {
    let (_, err, code) = edr(&["iso", "z6.mat", "qpoly.mat"]);
    assert_eq!(code, 2);
    assert!(err.contains("ring mismatch"), "{err}");
    assert_eq!(edr(&["kernel", "z6.mat", "z4.mat"]).2, 2);
    let p = scratch("badring.mat", "ring fppoly:9\n1 1\n[1]\n");
    let (_, err, code) = edr(&["rank", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"), "{err}");
}

#[test]
fn invalid_complexes_are_rejected() {
    let p = scratch(
        "notcomplex.json",
        r#"{"ring": "int", "boundaries": [{"m": 1, "n": 1, "entries": [1]}, {"m": 1, "n": 1, "entries": [1]}]}"#,
    );
    let (_, err, code) = edr(&["homology", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("nonzero"), "{err}");
}

#[test]
fn homology_over_a_polynomial_ring() {
    let p = scratch(
        "qcircle.json",
        r#"{"ring": "qpoly", "boundaries": [{"m": 1, "n": 1, "entries": ["[0,1]"]}]}"#,
    );
    let (out, _, code) = edr(&["homology", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "H0: Q[x]/([0,1])\nH1: 0\n");
}

#[test]
fn selftest_honours_the_seed() {
    let out = Command::new(env!("CARGO_BIN_EXE_edr"))
        .arg("--selftest")
        .env("EDR_SEED", "42")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.starts_with("seed 42\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    let out = Command::new(env!("CARGO_BIN_EXE_edr"))
        .arg("--selftest")
        .env("EDR_SEED", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
