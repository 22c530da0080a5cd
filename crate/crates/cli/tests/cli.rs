use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sdpke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdpke")).args(args).output().expect("binary runs")
}

fn rows(out: &Output) -> Vec<Value> {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    v["rows"].as_array().unwrap().clone()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn exchange_transcripts_are_byte_identical_for_a_seed() {
    let dir = TempDir::new().unwrap();
    for platform in ["groupring", "gl", "tropical", "make", "mobs"] {
        let (a, b) = (dir.path().join(format!("{platform}-a.json")), dir.path().join(format!("{platform}-b.json")));
        for p in [&a, &b] {
            let out = sdpke(&[
                "exchange", "--platform", platform, "--trials", "4", "--seed", "99", "--test-mode", "--transcript",
                path_str(p),
            ]);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{platform}");
    }
    let other = dir.path().join("other.json");
    sdpke(&["exchange", "--platform", "gl", "--trials", "4", "--seed", "100", "--transcript", path_str(&other)]);
    assert_ne!(fs::read(&other).unwrap(), fs::read(dir.path().join("gl-a.json")).unwrap());
}

#[test]
fn thread_count_does_not_change_transcripts() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "4"] {
        let p = dir.path().join(format!("t{threads}.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_sdpke"))
            .env("SDPKE_THREADS", threads)
            .args(["exchange", "--platform", "make", "--trials", "8", "--seed", "5", "--transcript", path_str(&p)])
            .output()
            .unwrap();
        assert!(out.status.success());
        files.push(fs::read(p).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn tropical_exchange_reports_one_row_per_trial() {
    let out = sdpke(&["exchange", "--platform", "tropical", "--trials", "100", "--seed", "1"]);
    assert!(out.status.success());
    let rows = rows(&out);
    assert_eq!(rows.len(), 100);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r["trial"], i as u64);
        assert_eq!(r["success"], 1);
        assert_eq!(r["platform"], "tropical");
    }
}

#[test]
fn transcripts_omit_key_outside_test_mode() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("t.json");
    sdpke(&["exchange", "--platform", "gl", "--transcript", path_str(&p)]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    let t = &v["transcripts"][0];
    assert!(t.get("key").is_none());
    assert!(t.get("A").is_some() && t.get("B").is_some());
    assert_eq!(t["platform"]["kind"], "gl");
}

#[test]
fn config_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"kind": "gl", "primes": 7}"#);
    let not_json = write(&dir, "nj.json", "{kind");
    let composite = write(&dir, "c.json", r#"{"kind": "gl", "prime": 12}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["exchange", "--params", &bad],
        vec!["exchange", "--params", &not_json],
        vec!["exchange", "--params", &composite],
        vec!["exchange", "--params", "/nonexistent/params.json"],
        vec!["exchange", "--platform", "nilpotent"],
        vec!["exchange"],
        vec!["exchange", "--platform", "gl", "--trials", "0"],
        vec!["exchange", "--platform", "gl", "--params", &composite],
        vec!["attack", "--platform", "gl", "--method", "sideways"],
    ];
    for args in cases {
        let out = sdpke(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn unsupported_transcript_schema_rejected() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", r#"{"schema": 2, "transcripts": []}"#);
    let out = sdpke(&["attack", "--method", "dimension", "--transcript", &t]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mismatched_attack_exits_three() {
    let out = sdpke(&["attack", "--method", "dimension", "--platform", "mobs"]);
    assert_eq!(out.status.code(), Some(3));
    let out = sdpke(&["attack", "--method", "telescope", "--platform", "gl"]);
    assert_eq!(out.status.code(), Some(3));
    let out = sdpke(&["count", "--platform", "tropical"]);
    assert_eq!(out.status.code(), Some(3));

    let dir = TempDir::new().unwrap();
    let p = dir.path().join("mobs.json");
    sdpke(&["exchange", "--platform", "mobs", "--transcript", path_str(&p)]);
    let out = sdpke(&["attack", "--method", "dimension", "--transcript", path_str(&p)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oversized_count_exits_four() {
    let out = sdpke(&["count", "--platform", "mobs"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2^24"));
}

#[test]
fn worked_count_example() {
    let dir = TempDir::new().unwrap();
    let params = write(&dir, "p.json", r#"{"kind": "mobs", "size": 1, "bits": 2, "perm": [1, 0], "M": [["10"]]}"#);
    let out = sdpke(&["count", "--params", &params, "--exponent-bits", "2", "--trials", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    for r in v["rows"].as_array().unwrap() {
        assert_eq!(r["counters"]["solution_count"], 4);
        assert_eq!(r["reference_found"], true);
    }
    assert_eq!(v["summary"]["median"], 4);
}

#[test]
fn exchange_then_attack_round_trip() {
    let dir = TempDir::new().unwrap();
    let make = write(&dir, "make.json", r#"{"kind": "make", "prime": 101}"#);
    let cases: [(&[&str], &str); 5] = [
        (&["--platform", "groupring"], "dimension"),
        (&["--platform", "gl"], "dimension"),
        (&["--params", &make], "dimension"),
        (&["--params", &make], "telescope"),
        (&["--platform", "tropical"], "tropical-binsearch"),
    ];
    for (i, (platform, method)) in cases.iter().enumerate() {
        let t = dir.path().join(format!("t{i}.json"));
        let mut args = vec!["exchange", "--trials", "5", "--seed", "3", "--test-mode", "--transcript", path_str(&t)];
        args.extend_from_slice(platform);
        assert!(sdpke(&args).status.success());
        let out = sdpke(&["attack", "--method", method, "--transcript", path_str(&t)]);
        assert!(out.status.success(), "{method}: {}", String::from_utf8_lossy(&out.stderr));
        let rows = rows(&out);
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r["success"] == 1 && r["operation"] == *method));
    }
}

#[test]
fn attack_without_transcript_generates_exchanges() {
    let out = sdpke(&["attack", "--method", "telescope", "--platform", "make", "--trials", "3"]);
    assert!(out.status.success());
    assert_eq!(rows(&out).len(), 3);
}

#[test]
fn binsearch_below_true_exponent_fails() {
    // 16-bit exponents are at least 2, so a bound of 1 is always too small.
    let out = sdpke(&["attack", "--method", "tropical-binsearch", "--platform", "tropical", "--trials", "3", "--x-max", "1"]);
    assert_eq!(out.status.code(), Some(1));
    for r in rows(&out) {
        assert_eq!(r["success"], 0);
        assert!(r["failure"].as_str().unwrap().contains("no n ≤ 1"));
    }
}

#[test]
fn attack_counters_are_deterministic() {
    let run = || {
        let out = sdpke(&["attack", "--method", "dimension", "--platform", "groupring", "--trials", "3", "--seed", "11"]);
        assert!(out.status.success());
        rows(&out).into_iter().map(|r| r["counters"].clone()).collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}

#[test]
fn bench_csv_layout() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("bench.csv");
    let out = sdpke(&["bench", "--platform", "gl", "--trials", "3", "--out", path_str(&out_path)]);
    assert!(out.status.success());
    let text = fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("platform,trial,operation,success,micros,counters"));
    assert_eq!(lines.count(), 9);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("p50=") && stderr.contains("exchange"));
}

#[test]
fn csv_reports_share_the_header() {
    let out = sdpke(&["exchange", "--platform", "gl", "--format", "csv", "--trials", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("platform,trial,operation,success,micros,counters\n"));
    assert_eq!(text.lines().count(), 3);
}
