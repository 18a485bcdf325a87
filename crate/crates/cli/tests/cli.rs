use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gorenstein(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gorenstein"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    serde_json::from_str(&run.stdout).expect("valid JSON")
}

#[test]
fn analyze_square_cubic() {
    let r = json(&gorenstein(&["--seed", "1", "analyze", &fixture("semplicissimo.poly")]));
    assert_eq!(r["schema_version"], "1.0.0");
    assert_eq!(r["config"]["seed"], 1);
    assert_eq!(r["hilbert"], serde_json::json!([1, 8, 8, 1]));
    assert_eq!(r["quadrics"]["presented"], true);
    assert_eq!(r["wlp"]["holds"], false);
}

#[test]
fn analyze_boolean_and_cube() {
    let r = json(&gorenstein(&["--seed", "1", "analyze", &fixture("boolean3.poly")]));
    assert_eq!(r["slp"]["holds"], true);
    let r = json(&gorenstein(&["--seed", "1", "analyze", &fixture("cube.poly")]));
    assert_eq!(r["hilbert"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(r["slp"]["holds"], true);
}

#[test]
fn checks_flag_limits_output() {
    let r = json(&gorenstein(&["--seed", "1", "--checks", "hilbert", "analyze", &fixture("boolean3.poly")]));
    assert!(r.get("wlp").is_none());
    assert_eq!(r["hilbert"], serde_json::json!([1, 3, 3, 1]));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poly");
    std::fs::write(&bad, "x1*x2 +\n").unwrap();
    let r = gorenstein(&["--seed", "1", "analyze", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 1, column"), "{}", r.stderr);
    std::fs::write(&bad, "x1^2 + x2^3\n").unwrap();
    let r = gorenstein(&["--seed", "1", "analyze", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not homogeneous"));
    let r = gorenstein(&["--seed", "1", "analyze", "/nonexistent.poly"]);
    assert_eq!(r.code, 2);
}

#[test]
fn complexes() {
    let r = json(&gorenstein(&["--seed", "2", "from-complex", &fixture("square.json")]));
    assert_eq!(r["combinatorics"]["graph_class"], "UniEven_NoWLP");
    assert_eq!(r["quadrics"]["presented"], true);
    let r = json(&gorenstein(&["--seed", "2", "from-complex", &fixture("pentagon.json")]));
    assert_eq!(r["combinatorics"]["graph_class"], "UniOdd_WLP");
    let r = json(&gorenstein(&["--seed", "2", "from-complex", &fixture("tk222.json")]));
    assert_eq!(r["combinatorics"]["noninjectivity"]["kernel_verified"], true);
    assert_eq!(r["combinatorics"]["face_counts"], serde_json::json!([1, 6, 12, 8]));
}

#[test]
fn impure_complex_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("impure.json");
    std::fs::write(&p, r#"{"vertices": [1, 2, 3, 4], "facets": [[1, 2, 3], [3, 4]]}"#).unwrap();
    let r = gorenstein(&["--seed", "1", "from-complex", p.to_str().unwrap()]);
    assert_eq!(r.code, 2, "{}", r.stdout);
}

#[test]
fn families() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("odd.poly");
    let r = json(&gorenstein(&[
        "--seed", "3", "family", "odd", "--d", "5", "--codim", "10", "--out", out.to_str().unwrap(),
    ]));
    assert_eq!(r["quadrics"]["presented"], true);
    assert_eq!(r["wlp"]["holds"], false);
    assert_eq!(r["wlp"]["mode"], "probabilistic");
    assert!(r["wlp"]["evidence"][0]["certificate"]["failure_bound"].is_string());
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.contains("t1"));
    let back = json(&gorenstein(&["--seed", "3", "--checks", "hilbert", "analyze", out.to_str().unwrap()]));
    assert_eq!(back["hilbert"], r["hilbert"]);

    let r = json(&gorenstein(&["--seed", "3", "family", "boolean", "--n", "5"]));
    assert_eq!(r["slp"]["holds"], true);
    let r = json(&gorenstein(&["--seed", "3", "--checks", "wlp,quadrics", "family", "even", "--d", "4", "--codim", "14"]));
    assert_eq!(r["wlp"]["holds"], false);
    let r = json(&gorenstein(&["--seed", "3", "--checks", "hilbert", "family", "turan", "--orders", "2,2,3"]));
    assert_eq!(r["hilbert"], serde_json::json!([1, 19, 32, 19, 1]));
    assert!(r["warnings"].to_string().contains("s_(k-1)"));
    let r = json(&gorenstein(&["--seed", "3", "--checks", "hilbert", "family", "even", "--d", "4", "--codim", "14"]));
    assert!(r["warnings"].to_string().contains("d + 12"));
}

#[test]
fn family_out_of_range_names_the_bound() {
    let r = gorenstein(&["--seed", "1", "family", "even", "--d", "4", "--codim", "15"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("15"));
    let r = gorenstein(&["--seed", "1", "family", "odd", "--d", "5", "--codim", "9"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("codim >= d + 5"), "{}", r.stderr);
}

#[test]
fn examples_single_row_and_deterministic() {
    let r = gorenstein(&["--seed", "42", "--trials", "20", "examples", "--only", "semplicissimo"]);
    assert_eq!(r.code, 0);
    let rows: Vec<&str> = r.stdout.lines().skip(1).collect();
    assert!(!rows.is_empty() && rows.iter().all(|l| l.starts_with("semplicissimo ") && l.ends_with("PASS")));
    let a = gorenstein(&["--seed", "42", "--trials", "20", "--format", "json", "examples"]);
    let b = gorenstein(&["--seed", "42", "--trials", "20", "--format", "json", "examples"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["all_pass"], true);
    assert_eq!(gorenstein(&["examples", "--only", "nope"]).code, 2);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["--seed", "9", "analyze", &fixture("semplicissimo.poly")];
    assert_eq!(gorenstein(&args).stdout, gorenstein(&args).stdout);
}

#[test]
fn seed_is_echoed_when_drawn() {
    let r = gorenstein(&["--checks", "hilbert", "analyze", &fixture("cube.poly")]);
    let seed = r.stderr.lines().find_map(|l| l.strip_prefix("seed: ")).expect("seed echoed");
    assert_eq!(json(&r)["config"]["seed"].to_string(), seed);
}

#[test]
fn mult_map_matches() {
    let r = json(&gorenstein(&["mult-map", &fixture("boolean3.poly"), "--k", "1", "--l", "2", "--coeffs", "1,1,1"]));
    assert_eq!(r["match"], true);
    let r = json(&gorenstein(&["mult-map", &fixture("boolean3.poly"), "--k", "2", "--l", "2", "--coeffs", "1,-2,3"]));
    assert_eq!(r["match"], true);
    let r = json(&gorenstein(&["--seed", "5", "mult-map", &fixture("semplicissimo.poly"), "--k", "1", "--l", "2"]));
    assert_eq!(r["match"], true);
    assert_eq!(r["rank"], 7);
    let r = json(&gorenstein(&["mult-map", &fixture("boolean3.poly"), "--k", "0", "--l", "3", "--coeffs", "1,-1,0"]));
    assert_eq!(r["match"], true);
    assert_eq!(r["warnings"][0], "f(L^perp) = 0");
}
