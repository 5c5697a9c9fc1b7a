use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

const EXAMPLE_SUPPORT: &str = r#"{"n":6,"c":2,"primes":[[1,2],[3,4],[5,6],[4,6],[1,4],[1,6]]}"#;
const EXAMPLE_IDEAL: &str = r#"{"n":6,"supports":[[2,4,6],[1,4,6],[1,3,6],[1,4,5]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_towerset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn example_support_is_not_towerizable() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "support.json", EXAMPLE_SUPPORT);
    let out = run(&["towerizable", s(&input)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["result"]["verdict"], "not towerizable");
    assert_eq!(v["schema_version"], 1);
    let want = hex::encode(Sha256::digest(EXAMPLE_SUPPORT.as_bytes()));
    assert_eq!(v["input_sha256"], want.as_str());

    let out = run(&["gen-towerizable", s(&input)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["result"]["witness"]["decomposition"].is_object());
}

#[test]
fn example_characterization() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "ideal.json", EXAMPLE_IDEAL);
    let out = run(&["verify", "characterization", s(&input)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = &json(&out)["result"];
    assert_eq!(r["acm"], true);
    let d = &r["towerization"]["decomposition"];
    assert_eq!(
        d["T"]["points"],
        serde_json::json!([[3, 1], [4, 1], [4, 2], [4, 3], [6, 1]])
    );
    assert_eq!(d["S0"]["points"], serde_json::json!([[5, 3]]));
}

#[test]
fn ideal_build_feeds_characterization() {
    let dir = TempDir::new().unwrap();
    let support = write(&dir, "support.json", EXAMPLE_SUPPORT);
    let built = json(&run(&["ideal", "build", s(&support)]));
    let ideal = write(&dir, "ideal.json", &built["result"].to_string());
    let out = run(&["ideal", "acm", s(&ideal)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["projective_dimension"], 2);
}

#[test]
fn tower_checks() {
    let dir = TempDir::new().unwrap();
    let single = write(&dir, "t.json", r#"{"c":2,"points":[[5,7]]}"#);
    assert_eq!(run(&["tower", "check", s(&single)]).status.code(), Some(0));
    let bad = write(&dir, "bad.json", r#"{"c":3,"points":[[1,1,2],[2,2,1]]}"#);
    let out = run(&["tower", "check", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["is_tower"], false);
    assert_eq!(run(&["tower", "hash", s(&bad)]).status.code(), Some(2));
}

#[test]
fn h_vectors_and_tsv() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", r#"{"c":2,"points":[[1,1]]}"#);
    let d = write(&dir, "d.json", r#"{"degrees":[[2],[5]]}"#);
    let out = run(&["tower", "hf", s(&t), "--degrees", s(&d)]);
    assert_eq!(
        json(&out)["result"]["h_vector"],
        serde_json::json!([1, 2, 2, 2, 2, 1])
    );
    let out = run(&["--format", "tsv", "tower", "hf", s(&t), "--degrees", s(&d)]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# schema_version=1\t"));
    assert!(text.contains("\ndegree\th\n0\t1\n1\t2\n"));
    // tsv is only for tabular reports
    assert_eq!(
        run(&["--format", "tsv", "tower", "check", s(&t)])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn star_and_segments() {
    let out = run(&["star", "gen", "--s", "3", "--c", "2"]);
    assert_eq!(
        json(&out)["result"]["points"],
        serde_json::json!([[2, 1], [3, 1], [3, 2]])
    );
    let dir = TempDir::new().unwrap();
    let l = write(&dir, "l.json", r#"{"c":2,"points":[[1,1],[1,2],[2,1]]}"#);
    let out = run(&["segment", "hvec", s(&l)]);
    assert_eq!(json(&out)["result"]["h_vector"], serde_json::json!([1, 2]));
    let not_segment = write(&dir, "n.json", r#"{"c":2,"points":[[2,2]]}"#);
    assert_eq!(
        run(&["segment", "hvec", s(&not_segment)]).status.code(),
        Some(2)
    );
}

#[test]
fn gts_commands() {
    let dir = TempDir::new().unwrap();
    let good = write(
        &dir,
        "g.json",
        r#"{"T":{"c":2,"points":[[3,1],[4,1],[4,2],[4,3],[6,1]]},"S0":{"c":2,"points":[[5,3]]}}"#,
    );
    assert_eq!(run(&["gts", "check", s(&good)]).status.code(), Some(0));
    let bad = write(
        &dir,
        "b.json",
        r#"{"T":{"c":2,"points":[[2,1],[3,1],[3,2]]},"S0":{"c":2,"points":[[4,1]]}}"#,
    );
    let out = run(&["gts", "check", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        json(&out)["result"]["failure"]["reason"],
        "column_not_shared"
    );
    let pts = write(
        &dir,
        "s.json",
        r#"{"c":2,"points":[[3,1],[4,1],[4,2],[4,3],[6,1],[5,3]]}"#,
    );
    let out = run(&["gts", "find", s(&pts)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json(&out)["result"]["decomposition"]["S0"]["points"],
        serde_json::json!([[5, 3]])
    );
}

#[test]
fn standard_form_chain() {
    let dir = TempDir::new().unwrap();
    let ideal = write(&dir, "ideal.json", EXAMPLE_IDEAL);
    let out = run(&["hb", "standard-form", s(&ideal)]);
    assert_eq!(out.status.code(), Some(0));
    let matrix = write(&dir, "m.json", &json(&out)["result"]["matrix"].to_string());
    let out = run(&["hb", "towerize", s(&matrix)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let r = &json(&out)["result"];
    assert_eq!(r["u_sets"]["u_prime"], serde_json::json!([[2, 3]]));
    assert_eq!(
        r["towerization"]["decomposition"]["S0"]["points"],
        serde_json::json!([[5, 3]])
    );

    let skew = write(
        &dir,
        "skew.json",
        r#"{"n":4,"supports":[[1,3],[1,4],[2,3],[2,4]]}"#,
    );
    let out = run(&["hb", "standard-form", s(&skew)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not aCM"));
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let garbage = write(&dir, "x.json", "{not json");
    assert_eq!(run(&["tower", "check", s(&garbage)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["tower", "check", s(&missing)]).status.code(), Some(2));
    let t = write(&dir, "t.json", r#"{"c":2,"points":[[1,1]]}"#);
    assert_eq!(
        run(&["tower", "check", s(&t), "--no-such-flag"])
            .status
            .code(),
        Some(2)
    );
    let out_of_range = write(&dir, "s.json", r#"{"n":2,"c":2,"primes":[[1,3]]}"#);
    assert_eq!(
        run(&["ideal", "build", s(&out_of_range)]).status.code(),
        Some(2)
    );
}

#[test]
fn output_file_and_pretty() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", r#"{"c":2,"points":[[1,1]]}"#);
    let dest = dir.path().join("report.json");
    let out = run(&["--pretty", "--output", s(&dest), "tower", "check", s(&t)]);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&dest).unwrap();
    assert!(text.contains("\n  \"schema_version\": 1"));
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--seed", "5", "--count", "8"];
    let a = run(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    let mut threaded = vec!["--threads", "2"];
    threaded.extend(args);
    let b = run(&threaded);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["result"]["suites"].as_array().unwrap().len(), 8);

    let one = run(&["selftest", "--suite", "bidiagonal", "--count", "5"]);
    assert_eq!(json(&one)["result"]["suites"][0]["suite"], "bidiagonal");
    assert_eq!(run(&["selftest", "--suite", "nope"]).status.code(), Some(2));
}
