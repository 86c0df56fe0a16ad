use std::path::Path;
use std::process::{Command, Output};

fn dm(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dm"))
        .args(args)
        .env("DM_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"n":3,"feasible":[0,7]}"#);
    let out = dm(dir.path(), &["check", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness: X = {}, Y = {1,2,3}, e = 1"));

    let ok = write(dir.path(), "ok.json", r#"{"n":3,"feasible":[0]}"#);
    let out = dm(dir.path(), &["check", &ok, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["delta_matroid"], true);
    assert_eq!(v["even"], true);

    let range = write(dir.path(), "range.json", r#"{"n":3,"feasible":[8]}"#);
    let out = dm(dir.path(), &["check", &range]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("feasible[0]"));

    let out = dm(dir.path(), &["check", "/nonexistent/x.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_with_warm_cache_is_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = dm(dir.path(), &["count", "--max-n", "4", "--with-even"]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    for d in ["3", "15", "155", "5959"] {
        assert!(text.lines().any(|l| l.split_whitespace().nth(1) == Some(d)));
    }
    assert!(dir.path().join("level-4.v1.dmlc").exists());
    let second = dm(dir.path(), &["count", "--max-n", "4", "--with-even"]);
    assert_eq!(second.stdout, first.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hits for levels [1, 2, 3, 4]"));
}

#[test]
fn count_limits() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(dm(dir.path(), &["count", "--max-n", "6"]).status.code(), Some(3));
    assert_eq!(dm(dir.path(), &["count-even", "--n", "7", "--allow-n6"]).status.code(), Some(3));
    assert_eq!(dm(dir.path(), &["count", "--max-n", "0"]).status.code(), Some(2));
    assert_eq!(dm(dir.path(), &["count", "--threads", "0"]).status.code(), Some(2));
}

#[test]
fn constructions_are_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["stable-complement", "cut-sample", "stacked-even"] {
        let a = dm(dir.path(), &["construct", kind, "--n", "5", "--seed", "7"]);
        let b = dm(dir.path(), &["--seed", "7", "construct", kind, "--n", "5"]);
        assert_eq!(a.status.code(), Some(0), "{kind}");
        assert_eq!(a.stdout, b.stdout);
        let path = write(dir.path(), "c.json", &stdout(&a));
        assert_eq!(dm(dir.path(), &["check", &path]).status.code(), Some(0), "{kind}");
    }
    let gs = dm(dir.path(), &["construct", "gs-stable", "--n", "4", "--r", "2"]);
    assert_eq!(stdout(&gs), "6\n9\n");
    let bad = dm(dir.path(), &["construct", "cut-sample", "--n", "4", "--cut", "5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("s.json");
    let rec = dir.path().join("r.json");
    let sys_s = sys.to_str().unwrap();
    let out = dm(dir.path(), &["construct", "stacked-even", "--n", "6", "--seed", "3", "--out", sys_s]);
    assert_eq!(out.status.code(), Some(0));
    let out = dm(dir.path(), &["encode", "--in", sys_s, "--out", rec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(record["parity"], "even");
    assert_eq!(record["alpha"], "1/6");
    let decoded = dm(dir.path(), &["decode", "--in", rec.to_str().unwrap()]);
    assert_eq!(stdout(&decoded), std::fs::read_to_string(&sys).unwrap());
    assert_eq!(dm(dir.path(), &["roundtrip", sys_s]).status.code(), Some(0));
}

#[test]
fn roundtrip_examples() {
    let dir = tempfile::tempdir().unwrap();
    let evens: Vec<String> = (0..16u32)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| m.to_string())
        .collect();
    let all = write(dir.path(), "all.json", &format!(r#"{{"n":4,"feasible":[{}]}}"#, evens.join(",")));
    let out = dm(dir.path(), &["roundtrip", &all]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("|S| = 0"));

    let mixed = write(dir.path(), "mixed.json", r#"{"n":3,"feasible":[0,1]}"#);
    let out = dm(dir.path(), &["roundtrip", &mixed]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parit"));
}

#[test]
fn spectrum_and_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = dm(dir.path(), &["spectrum", "--n", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["smallest_eigenvalue"], -3);
    assert_eq!(v["matrix_identity"], true);
    let out = dm(dir.path(), &["spectrum", "--n", "10"]);
    assert!(stdout(&out).contains("matrix identity: skipped"));

    let out = dm(dir.path(), &["bound", "--n", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["alpha"], "1/6");
    assert_eq!(v["bell"], "203");
    assert_eq!(dm(dir.path(), &["bound", "--n", "2"]).status.code(), Some(2));
}
