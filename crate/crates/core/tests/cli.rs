//! Drives the `nqueens` binary end to end.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use nqueens_closed::app::report::Record;
use nqueens_closed::counters::{predicted_kernel_calls, CountResult, Method};
use nqueens_closed::ProblemTag;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn nqueens(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_nqueens"))
        .args(args)
        .env_remove("NQUEENS_CACHE")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn json_records(stdout: &str) -> Vec<Record> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn count_both_methods_agree() {
    let r = nqueens(&["count", "--problem", "queens", "--n", "5", "--method", "both", "--no-cache", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let recs = json_records(&r.stdout);
    assert_eq!(recs.len(), 2);
    assert_eq!((recs[0].method.as_str(), recs[0].value.as_str()), ("closed", "10"));
    assert_eq!((recs[1].method.as_str(), recs[1].value.as_str()), ("oracle", "10"));
}

#[test]
fn count_latin_and_ranges() {
    let r = nqueens(&["count", "--problem", "latin", "--n", "2", "--method", "closed", "--no-cache"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("value=2 "), "{}", r.stdout);

    let r = nqueens(&["count", "--problem", "semi", "--n", "1..5", "--no-cache", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let values: Vec<&str> = r.stdout.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(values, ["1", "1", "3", "7", "23"]);
}

#[test]
fn count_refuses_over_ceiling() {
    let r = nqueens(&["count", "--problem", "queens", "--n", "30", "--method", "closed", "--no-cache"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("ceiling"), "{}", r.stderr);
    let r = nqueens(&["count", "--problem", "queens", "--n", "20", "--method", "oracle", "--no-cache"]);
    assert_eq!(r.code, 3);
}

#[test]
fn max_work_raises_ceiling_with_warning() {
    let r = nqueens(&[
        "count", "--problem", "toroidal-semi", "--n", "13", "--no-cache", "--max-work", "100000000000",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("value=1030367"));
    assert!(r.stderr.contains("O(n*4^n)"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["count", "--problem", "rooks", "--n", "3"],
        vec!["count", "--problem", "queens", "--n", "x"],
        vec!["count", "--problem", "queens"],
        vec!["frobnicate"],
        vec!["count", "--problem", "queens", "--n", "0", "--no-cache"],
        vec!["count", "--problem", "schur", "--n", "3", "--method", "oracle", "--no-cache"],
        vec!["bound", "--problem", "latin", "--n", "3", "--no-cache"],
    ] {
        let r = nqueens(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
    }
    assert_eq!(nqueens(&["--help"]).code, 0);
}

#[test]
fn bound_examples() {
    let get = |problem: &str, n: &str| {
        let r = nqueens(&["bound", "--problem", problem, "--n", n, "--no-cache", "--format", "json"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        json_records(&r.stdout).remove(0).value
    };
    assert_eq!(get("toroidal-semi", "5"), "5");
    assert_eq!(get("schur", "2"), "0");
    assert_eq!(get("schur", "5"), "-5");
    assert_eq!(get("queens", "1"), "1");
}

#[test]
fn json_round_trips() {
    let r = nqueens(&["count", "--problem", "toroidal", "--n", "5", "--no-cache", "--format", "json"]);
    let rec = json_records(&r.stdout).remove(0);
    let back = CountResult::try_from(&rec).unwrap();
    assert_eq!(back.problem, ProblemTag::Toroidal);
    assert_eq!(back.method, Method::Closed);
    assert_eq!(back.value, 10.into());
    assert_eq!(back.kernel_calls, rec.kernel_calls);
    assert_eq!(back.elapsed_s, rec.elapsed_s);
    assert_eq!(serde_json::to_string(&Record::from(&back)).unwrap(), r.stdout.trim());
}

#[test]
fn cache_is_a_pure_memo() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_arg = cache.to_str().unwrap();
    let args = ["count", "--problem", "semi", "--n", "6", "--format", "json", "--cache-file", cache_arg];
    let first = json_records(&nqueens(&args).stdout).remove(0);
    let second = json_records(&nqueens(&args).stdout).remove(0);
    let fresh = json_records(&nqueens(&["count", "--problem", "semi", "--n", "6", "--format", "json", "--no-cache"]).stdout)
        .remove(0);
    assert_eq!(first, second, "second run is served from the cache");
    assert_eq!(first.value, fresh.value);
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), 1);
}

#[test]
fn verify_suites() {
    let r = nqueens(&["verify", "--problem", "toroidal-semi", "--max-n", "8"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(!r.stdout.contains("FAIL"));
    assert!(r.stdout.contains("0 failed"));

    let r = nqueens(&["verify", "--problem", "all", "--max-n", "4"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);

    let r = nqueens(&["verify", "--problem", "queens", "--max-n", "99"]);
    assert_eq!(r.code, 3);
}

#[test]
fn verify_against_reference() {
    let dir = data_dir();
    let r = nqueens(&["verify", "--problem", "all", "--max-n", "5", "--against-reference", dir.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    for id in ["A000170", "A051906", "A099152", "A006717", "A003112"] {
        assert!(r.stdout.contains(&format!("PASS {id}")), "{id} missing:\n{}", r.stdout);
    }
}

fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let b = fs::read(&p).unwrap();
            (p, b)
        })
        .collect();
    v.sort();
    v
}

#[test]
fn reference_command() {
    let dir = data_dir();
    let before = snapshot(&dir);
    let files: Vec<String> = ["b051906.txt", "b006717.txt", "b003112.txt"]
        .iter()
        .map(|f| dir.join(f).to_str().unwrap().to_string())
        .collect();
    let mut args = vec!["reference", "--closed-max-n", "7"];
    args.extend(files.iter().map(String::as_str));
    let r = nqueens(&args);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(!r.stdout.contains("FAIL"));
    assert_eq!(before, snapshot(&dir), "reference files are never modified");

    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("b000170.txt");
    fs::write(&bad, "# prefix\n1 1\n2 zero\n").unwrap();
    let r = nqueens(&["reference", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);

    let wrong = tmp.path().join("b099152.txt");
    fs::write(&wrong, "1 1\n2 1\n3 4\n").unwrap();
    let r = nqueens(&["reference", wrong.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("FAIL A099152 index=3"), "{}", r.stdout);
}

#[test]
fn bench_tables() {
    let r = nqueens(&["bench", "--problem", "toroidal-semi"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 1, "header only:\n{}", r.stdout);

    let r = nqueens(&["bench", "--problem", "queens", "--n", "3..5", "--format", "json", "--threads", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows: Vec<serde_json::Value> = r.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let n = row["n"].as_u64().unwrap() as usize;
        let expected = predicted_kernel_calls(ProblemTag::Queens, n).unwrap();
        assert_eq!(row["kernel_calls"].as_u64().unwrap(), expected);
        assert!(row["peak_bytes"].as_u64().is_some(), "the binary tracks allocations");
    }

    let r = nqueens(&["bench", "--problem", "toroidal-semi", "--n", "4..9", "--format", "csv", "--threads", "1"]);
    assert_eq!(r.code, 0);
    for line in r.stdout.lines().skip(2) {
        let ratio: f64 = line.split(',').nth(6).unwrap().parse().unwrap();
        assert!((3.0..=6.0).contains(&ratio), "{line}");
    }
}
