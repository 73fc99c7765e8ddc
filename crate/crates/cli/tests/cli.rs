use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn qplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qplane")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn run_json(cmd: &str, file: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(file);
    let mut args = vec![cmd, "--input", path.to_str().unwrap(), "--json"];
    args.extend_from_slice(extra);
    let out = qplane(&args);
    (out.status.code().unwrap(), json_of(&out))
}

#[test]
fn report_on_case_three_fixture() {
    let (code, v) = run_json("report", "z8_case3.json", &[]);
    assert_eq!(code, 0);
    let sectors = v["sectors"].as_array().unwrap();
    assert_eq!(sectors.len(), 2);
    let minus = &sectors[1];
    assert_eq!(minus["xi_values"][1]["value"], "-1");
    assert_eq!(minus["case_tag"], "III");
    let dims: Vec<u64> = minus["irreps"].as_array().unwrap().iter().map(|i| i["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![4, 4, 4, 4]);
    assert_eq!(minus["semisimple"], true);
    assert_eq!(minus["radical_dim"], 0);
    assert_eq!(v["dim_A"], v["sector_dim_sum"]);
    for s in sectors {
        for (name, c) in s["checks"].as_object().unwrap() {
            assert_eq!(c["status"], "pass", "{name}");
        }
    }
}

#[test]
fn validate_names_the_violated_constraint() {
    let path = fixture("bad_z2xz2.json");
    let out = qplane(&["validate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("alpha_11"), "{err}");

    let (code, v) = run_json("validate", "bad_z2xz2.json", &[]);
    assert_eq!(code, 2);
    assert_eq!(v["valid"], false);
    assert!(v["problems"][0].as_str().unwrap().contains("alpha_11"));
}

#[test]
fn classify_case_four_fixture() {
    let (code, v) = run_json("classify", "z4_case4.json", &[]);
    assert_eq!(code, 0);
    let sectors = v["sectors"].as_array().unwrap();
    assert_eq!(sectors.len(), 1);
    assert_eq!(sectors[0]["case_tag"], "IV");
}

#[test]
fn classify_tags_across_fixtures() {
    for (file, tags) in [
        ("z8_case1.json", vec!["I", "I"]),
        ("z8_case2.json", vec!["I", "II"]),
        ("z8_case5.json", vec!["IV", "V"]),
        ("z8_case6.json", vec!["IV", "VI"]),
        ("z8_swap.json", vec!["I", "II"]),
        ("z8_rank_one.json", vec!["I", "II"]),
    ] {
        let (code, v) = run_json("classify", file, &[]);
        assert_eq!(code, 0, "{file}");
        let got: Vec<&str> = v["sectors"].as_array().unwrap().iter().map(|s| s["case_tag"].as_str().unwrap()).collect();
        assert_eq!(got, tags, "{file}");
    }
    let (_, v) = run_json("classify", "z8_swap.json", &[]);
    assert_eq!(v["sectors"][1]["swapped"], true);
}

#[test]
fn sectors_account_for_the_whole_algebra() {
    let (code, v) = run_json("sectors", "z8_repeated_root.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["sectors"].as_array().unwrap().len(), 4);
    assert_eq!(v["sector_dim_sum"], 32);
    assert_eq!(v["dim_A"], 32);
}

#[test]
fn reps_prints_matrices() {
    let (code, v) = run_json("reps", "z4_case4.json", &[]);
    assert_eq!(code, 0);
    let irreps = v["sectors"][0]["irreps"].as_array().unwrap();
    let lengths: Vec<u64> = irreps.iter().map(|i| i["N"].as_u64().unwrap()).collect();
    assert_eq!(lengths, vec![1, 3, 1, 3]);
    for i in irreps {
        let n = i["dim"].as_u64().unwrap() as usize;
        let m = &i["matrices"];
        assert_eq!(m["x"].as_array().unwrap().len(), 2);
        assert_eq!(m["h"].as_array().unwrap().len(), 1);
        assert_eq!(m["x"][0].as_array().unwrap().len(), n);
    }
}

#[test]
fn exceptional_sector_is_flagged() {
    let (code, v) = run_json("report", "z8_repeated_root.json", &[]);
    assert_eq!(code, 0);
    let s = &v["sectors"][1];
    assert_eq!(s["case_tag"], "VI");
    assert_eq!(s["exceptional"], true);
    assert_eq!(s["semisimple"], false);
    assert_eq!(s["checks"]["completeness"]["status"], "skipped");
    assert_eq!(s["polynomials"][0]["squarefree"], false);
}

#[test]
fn rank_three_runs_the_oracle_only() {
    let (code, v) = run_json("report", "z2_rank_three.json", &[]);
    assert_eq!(code, 0);
    let s = &v["sectors"][0];
    assert_eq!(s["case_tag"], Value::Null);
    assert_eq!(s["radical_dim"], 14);
    assert_eq!(s["checks"]["oracle"]["status"], "pass");
    assert_eq!(s["checks"]["relations"]["status"], "skipped");
}

#[test]
fn dimension_cap_marks_sectors_unverified() {
    let (code, v) = run_json("report", "z8_case3.json", &["--max-dim", "10"]);
    assert_eq!(code, 0);
    for s in v["sectors"].as_array().unwrap() {
        assert_eq!(s["verified"], false);
        assert_eq!(s["radical_dim"], Value::Null);
        assert_eq!(s["checks"]["relations"]["status"], "pass");
    }
}

#[test]
fn report_round_trips_through_verify() {
    let (code, report) = run_json("report", "z8_case6.json", &[]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).unwrap();
    let out = qplane(&["verify", "--input", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let again = json_of(&out);
    assert_eq!(again["input"], report["input"]);
    for (a, b) in report["sectors"].as_array().unwrap().iter().zip(again["sectors"].as_array().unwrap()) {
        assert_eq!(a["checks"], b["checks"]);
    }
}

#[test]
fn json_output_is_canonical_and_deterministic() {
    let path = fixture("z8_case5.json");
    let args = ["report", "--input", path.to_str().unwrap(), "--json", "--seed", "7"];
    let first = qplane(&args);
    let second = qplane(&args);
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    let reparsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap(), text.trim_end());
}

#[test]
fn numeric_mode_and_single_sector() {
    let (code, v) = run_json("verify", "z8_case6.json", &["--mode", "numeric", "--sector", "1"]);
    assert_eq!(code, 0);
    let sectors = v["sectors"].as_array().unwrap();
    assert_eq!(sectors.len(), 1);
    assert_eq!(sectors[0]["case_tag"], "VI");
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("not json", "{"),
        ("unknown field", r#"{"group":{"invariant_factors":[4]},"generators":[],"alpha":[],"extra":1}"#),
        ("bad literal", r#"{"group":{"invariant_factors":[4]},"generators":[{"g":[1],"chi":[1]}],"alpha":[["1.5"]]}"#),
        (
            "wrong rank of exponent vector",
            r#"{"group":{"invariant_factors":[4]},"generators":[{"g":[1,0],"chi":[1]}],"alpha":[["0"]]}"#,
        ),
    ];
    for (name, text) in cases {
        let path = dir.path().join("in.json");
        std::fs::write(&path, text).unwrap();
        let out = qplane(&["validate", "--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
    }
    let out = qplane(&["validate", "--input", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let (code, _) = run_json("report", "z8_case3.json", &["--sector", "9"]);
    assert_eq!(code, 2);
}

#[test]
fn unreachable_tolerance_fails_with_one() {
    // 128-bit arithmetic cannot certify residuals below 1e-60
    let (code, v) = run_json("verify", "z8_case6.json", &["--tolerance", "1e-60", "--sector", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    assert_eq!(v["sectors"][0]["checks"]["relations"]["status"], "fail");
}
