use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn moduli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moduli")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn check<'a>(r: &'a Value, id: &str) -> &'a Value {
    r["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("moduli-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn report_has_mandated_keys() {
    let out = moduli(&["--omit-timing", "series", "goettsche", "--betti", "1,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["suite"], "series");
    assert_eq!(r["elapsed_ms"], 0);
    for c in r["checks"].as_array().unwrap() {
        assert!(c["id"].is_string() && c["anchor"].is_string());
        assert!(c["status"] == "pass" || c["status"] == "fail");
        assert!(c.get("witness").is_some());
    }
}

#[test]
fn omit_timing_makes_output_byte_identical() {
    let args = ["--omit-timing", "quot", "--instances", "6", "--seed", "11", "--max-dim", "7"];
    let a = moduli(&args);
    let b = moduli(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let s = ["--omit-timing", "series", "theta", "--order", "3"];
    assert_eq!(moduli(&s).stdout, moduli(&s).stdout);
}

#[test]
fn sequential_and_parallel_agree() {
    let args = ["--omit-timing", "fock", "--surface", "abelian", "--max-energy", "2"];
    let par = moduli(&args);
    let mut seq_args = vec!["--sequential"];
    seq_args.extend_from_slice(&args);
    let seq = moduli(&seq_args);
    assert_eq!(par.status.code(), Some(0));
    assert_eq!(par.stdout, seq.stdout);
}

#[test]
fn ratio_series_for_projective_plane_passes() {
    let out = moduli(&["series", "ratio-3-7", "--betti", "1,0,1,0,1", "--order", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn every_series_kind_passes() {
    for kind in ["goettsche", "macdonald", "ratio-3-7", "hodge-3-8", "theta", "yoshioka", "uhlenbeck-p2"] {
        let out = moduli(&["series", kind, "--order", "3"]);
        assert_eq!(out.status.code(), Some(0), "{kind}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn series_out_writes_coefficients() {
    let path = scratch("goettsche.json");
    let out = moduli(&["series", "goettsche", "--order", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.is_object());
}

#[test]
fn report_flag_writes_file() {
    let path = scratch("report.json");
    let out = moduli(&["--omit-timing", "--report", path.to_str().unwrap(), "schubert", "--r", "3", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "schubert");
}

#[test]
fn schubert_top_class() {
    let r = report(&moduli(&["schubert", "--r", "4", "--n", "2"]));
    let top = check(&r, "schubert.excess_top[r=4,n=2]");
    assert_eq!(top["status"], "pass");
    assert_eq!(top["witness"]["got"], "6");
}

#[test]
fn rank_two_constants() {
    let out = moduli(&["fock", "--rank", "2", "--recover-constants", "8", "--max-energy", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let c = &check(&r, "fock.constants[r=2]")["witness"]["c"];
    let want: Vec<String> = (1..=8).map(|n| (-2 * n).to_string()).collect();
    assert_eq!(c, &serde_json::json!(want));
}

#[test]
fn degenerate_pairing_file_is_accepted() {
    let path = scratch("degenerate.json");
    let datum = r#"{"degrees": [0, 2, 2, 4], "pairing": [[0,0,0,1],[0,0,0,0],[0,0,0,0],[1,0,0,0]], "names": ["1","a","b","pt"]}"#;
    std::fs::write(&path, datum).unwrap();
    let out = moduli(&["fock", "--pairing-matrix", path.to_str().unwrap(), "--max-energy", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_two() {
    let bad_pairing = scratch("asymmetric.json");
    std::fs::write(&bad_pairing, r#"{"degrees": [0, 4], "pairing": [[0,1],[2,0]]}"#).unwrap();
    let garbage = scratch("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    let cases: [&[&str]; 7] = [
        &["series", "goettsche", "--betti", "1,0,1,0,2"],
        &["series", "goettsche", "--betti", "1,0,1"],
        &["schubert", "--r", "2", "--n", "3"],
        &["schubert", "--r", "2", "--n", "0"],
        &["fock", "--pairing-matrix", bad_pairing.to_str().unwrap()],
        &["fock", "--pairing-matrix", garbage.to_str().unwrap()],
        &["no-such-command"],
    ];
    for args in cases {
        let out = moduli(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn runtime_error_exits_one() {
    let out = moduli(&["--report", "/nonexistent-dir/r.json", "schubert", "--r", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dump_instances_lists_every_instance() {
    let path = scratch("instances.json");
    let out = moduli(&["quot", "--instances", "4", "--max-dim", "6", "--dump-instances", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let list = v.as_array().or_else(|| v["instances"].as_array()).expect("instance list");
    assert_eq!(list.len(), 4);
}
