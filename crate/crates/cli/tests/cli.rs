use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cliffhc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffhc")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn verdicts(json: &str) -> Vec<(String, bool)> {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    v["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["id"].as_str().unwrap().to_string(), a["passed"].as_bool().unwrap()))
        .collect()
}

#[test]
fn verify_main1_on_a2() {
    let o = cliffhc(&["verify", "--algebra", "A2", "--suite", "main1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("main1/phi-injective@hbar=1"));
    assert!(out.contains("0 failed"));
}

#[test]
fn verify_main2_on_b2_and_killing_form() {
    for form in ["trace", "killing"] {
        let o = cliffhc(&["verify", "--algebra", "B2", "--form", form, "--suite", "main2", "--json"]);
        assert_eq!(code(&o), 0, "{form}: {}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["form"], form);
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn closed_formula_failure_exits_one_with_counterexample() {
    let o = cliffhc(&["verify", "--algebra", "B2", "--suite", "lemmas", "--hbar", "1"]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("counterexample lemma/closed-formula:"), "{err}");
    assert_eq!(err.lines().filter(|l| l.starts_with("counterexample")).count(), 1, "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--algebra", "Z9"][..],
        &["verify", "--algebra", "E8"],
        &["verify", "--algebra", "A2", "--hbar", "x/0"],
        &["verify", "--algebra", "A2", "--suite", "main3"],
        &["table"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&cliffhc(args)), 2, "{args:?}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = cliffhc(&["verify", "--algebra", "A1", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    let (sa, sb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    let v: serde_json::Value = serde_json::from_slice(&sa).unwrap();
    assert_eq!(v["schema"], "cliffhc-report/1");
    assert_eq!(v["hbar"], serde_json::json!(["0", "1", "2", "1/2"]));
}

#[test]
fn table_rows() {
    let o = cliffhc(&["table", "--algebra", "G2", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "cliffhc-table/1");
    let rows: Vec<(u64, u64, u64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["exponent"].as_u64().unwrap(), r["degree"].as_u64().unwrap(), r["dimension"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(1, 3, 1), (5, 11, 1)]);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["spans_equal"] == true));

    let o = cliffhc(&["table", "--algebra", "A1+A1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().take(3).collect::<Vec<_>>() == ["1", "3", "2"]), "{text}");

    let o = cliffhc(&["table", "--algebra", "B2"]);
    assert!(stdout(&o).contains("not parallel"));
}

fn cache_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn cache_roundtrip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("cache");
    let d = dir.to_str().unwrap();

    assert_eq!(code(&cliffhc(&["cache", "build", "--algebra", "A2", "--cache-dir", d])), 0);
    let first = cache_files(&dir);
    assert_eq!(first.len(), 2);
    assert_eq!(code(&cliffhc(&["cache", "build", "--algebra", "A2", "--cache-dir", d])), 0);
    assert_eq!(cache_files(&dir), first, "rebuild is byte-identical");
    assert_eq!(code(&cliffhc(&["cache", "build", "--algebra", "A1+A1", "--form", "killing", "--cache-dir", d])), 0);

    let o = cliffhc(&["cache", "list", "--cache-dir", d]);
    assert_eq!(stdout(&o), "A1+A1\tkilling\nA2\ttrace\n");

    let args = ["verify", "--algebra", "A2", "--suite", "main1", "--json"];
    let fresh = stdout(&cliffhc(&args));
    let cached = stdout(&cliffhc(&[&args[..], &["--cache-dir", d]].concat()));
    assert_eq!(verdicts(&cached), verdicts(&fresh));

    let o = cliffhc(&["cache", "clear", "--cache-dir", d]);
    assert_eq!(stdout(&o), "removed 4 files\n");
    assert!(cache_files(&dir).is_empty());
    let after = stdout(&cliffhc(&[&args[..], &["--cache-dir", d]].concat()));
    assert_eq!(verdicts(&after), verdicts(&fresh));
}

#[test]
fn corrupt_cache_entry_is_rebuilt() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().to_str().unwrap();
    assert_eq!(code(&cliffhc(&["cache", "build", "--algebra", "A1", "--cache-dir", d])), 0);
    let good = cache_files(tmp.path());
    let (name, _) = good.iter().find(|(n, _)| n.ends_with(".algebra.json")).unwrap();
    fs::write(tmp.path().join(name), "{\"truncated\":").unwrap();

    let o = cliffhc(&["verify", "--algebra", "A1", "--suite", "main1", "--cache-dir", d]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning: corrupt cache entry"), "{}", stderr(&o));
    assert_eq!(cache_files(tmp.path()), good);
}
