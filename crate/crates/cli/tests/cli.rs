//! End-to-end runs of the smk binary: exit codes, report shapes, and
//! determinism, exercised through temp files like a user would.

use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::Command;

fn smk(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_smk")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("smk-cli-{}-{name}", std::process::id()))
}

fn write_instance(name: &str, v: &Value) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

#[test]
fn uniform_roundtrip_passes() {
    let f = tmp("u22.json");
    let (code, _, _) =
        smk(&["gen", "--kind", "uniform", "--n", "2", "--k", "2", "-o", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, stdout, _) = smk(&["verify", f.to_str().unwrap()]);
    assert_eq!(code, 0, "verify should pass: {stdout}");
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["admissible_bases"], json!(4));
    assert_eq!(report["checks"]["symplectic"], json!(true));
}

#[test]
fn rank_one_uniform_is_rejected() {
    let f = tmp("u12.json");
    smk(&["gen", "--kind", "uniform", "--n", "2", "--k", "1", "-o", f.to_str().unwrap()]);
    let (code, stdout, _) = smk(&["verify", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert!(report["falsified"].is_string());
    assert!(report["instance"].is_object(), "offending instance is echoed");
}

#[test]
fn exchange_violation_is_certified() {
    let f = write_instance(
        "exch.json",
        &json!({"n": 2, "kind": "enveloping_bases", "bases": [[1, 2], [-1, -2], [1, -2]]}),
    );
    let (code, stdout, _) = smk(&["verify", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert!(report["falsified"].as_str().unwrap().contains("exchange"));
    assert!(report["certificate"].is_object(), "exchange failure carries a certificate");
}

#[test]
fn zero_element_is_invalid() {
    let f = write_instance(
        "zero.json",
        &json!({"n": 2, "kind": "enveloping_bases", "bases": [[0, 1]]}),
    );
    let (code, _, stderr) = smk(&["verify", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"));
}

#[test]
fn missing_file_is_invalid() {
    let (code, _, stderr) = smk(&["verify", "/nonexistent/smk.json"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"));
}

#[test]
fn named_example_reports_pass() {
    let f = tmp("s1.json");
    smk(&["gen", "--example", "s1", "-o", f.to_str().unwrap()]);
    for cmd in ["verify", "flats", "moebius", "polytope", "fan", "mason"] {
        let (code, stdout, _) = smk(&[cmd, f.to_str().unwrap()]);
        assert_eq!(code, 0, "{cmd} on the three-basis example: {stdout}");
    }
    let (_, stdout, _) = smk(&["moebius", f.to_str().unwrap()]);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["mobius"], json!(2));
}

#[test]
fn ortho_enumerate_singletons_are_falsified() {
    let (code, stdout, _) = smk(&["ortho", "--enumerate", "2"]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let falsified = report["falsifications"].as_array().unwrap();
    assert_eq!(falsified.len(), 4, "each singleton family lacks an envelope");
}

#[test]
fn corpus_small_is_deterministic_and_clean() {
    let (code1, out1, _) = smk(&["corpus", "--max-n", "2", "--seed", "7"]);
    let (code2, out2, _) = smk(&["corpus", "--max-n", "2", "--seed", "7"]);
    assert_eq!(code1, 0, "all two-pair instances satisfy every claim");
    assert_eq!(code1, code2);
    assert_eq!(out1, out2, "reports are byte-identical across runs");
}

#[test]
fn corpus_filter_without_match_notes_zero() {
    let (code, stdout, _) = smk(&["corpus", "--max-n", "2", "--filter", "zzz"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["note"], json!("0 instances"));
    assert_eq!(report["instances"], json!(0));
}

#[test]
fn punctured_uniform_trips_pairing_and_halfspace_checks() {
    // all 3-subsets of the six signed elements except {1,2,3}
    let univ = [1i64, 2, 3, -1, -2, -3];
    let mut bases = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let b = vec![univ[i], univ[j], univ[k]];
                if b != [1, 2, 3] {
                    bases.push(b);
                }
            }
        }
    }
    let f = write_instance(
        "nu3.json",
        &json!({"n": 3, "kind": "enveloping_bases", "bases": bases}),
    );
    let (code, stdout, _) = smk(&["verify", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["check"], json!("psi_bijection"));
    let (code, stdout, _) = smk(&["polytope", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["h_eq_v"], json!("V_subset_H"));
    assert_eq!(report["dim"], json!(3));
}

#[test]
fn mirrored_class_truncation_trips_the_dimension_check() {
    // 2-sets meeting each of the mirrored classes {1,2,3*}, {1*,2*,3}
    // at most once
    let class = [1i64, 2, -3];
    let univ = [1i64, 2, 3, -1, -2, -3];
    let mut bases = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let b = [univ[i], univ[j]];
            let hits = b.iter().filter(|e| class.contains(e)).count();
            if hits == 1 {
                bases.push(vec![b[0], b[1]]);
            }
        }
    }
    let f = write_instance(
        "cp3.json",
        &json!({"n": 3, "kind": "enveloping_bases", "bases": bases}),
    );
    let (code, _, _) = smk(&["verify", f.to_str().unwrap()]);
    assert_eq!(code, 0, "the family is a genuine ranked symplectic matroid");
    let (code, stdout, _) = smk(&["polytope", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["dim"], json!(2));
}
