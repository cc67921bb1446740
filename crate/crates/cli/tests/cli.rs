use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lie_jacobi::cache::{Artifact, ArtifactKey, SCHEMA_VERSION};
use lie_jacobi::{Cache, Command as Cmd, RunConfig};
use lie_jacobi_core::SimpleType;
use serde_json::Value;

fn lie_jacobi(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lie-jacobi"));
    cmd.args(args).env_remove("LIE_JACOBI_CACHE");
    if let Some(dir) = cache {
        cmd.env("LIE_JACOBI_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(args: &[&str], cache: Option<&Path>) -> (i32, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = lie_jacobi(&full, cache);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verify_theorem_a1_json() {
    let (code, text) = json(&["verify-theorem", "A", "1"], None);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "verify-theorem");
    assert_eq!(v["config"]["family"], "A");
    assert_eq!(v["config"]["rank"], 1);
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["all_ok"], true);
    assert!(v["version"].is_string());
    let row = &v["rows"][0];
    assert_eq!(row["kind"], "theorem");
    assert_eq!(row["c"], "2/1");
    assert_eq!(row["expected_factored"], "2*(h1 + 2)");
    assert_eq!(row["theorem_ok"], true);
    // J = 2*h1 + 4 as a term list
    assert_eq!(
        row["jacobian"],
        serde_json::json!([["4/1", []], ["2/1", ["cartan:0:0:0^1"]]])
    );
}

#[test]
fn table_output_names_the_jacobian() {
    let out = lie_jacobi(&["verify-theorem", "a", "1"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("= 2*(h1 + 2)"), "{text}");
    assert!(text.contains("ALL OK"));
}

#[test]
fn unsupported_selections_are_usage_errors() {
    for args in [
        &["verify-theorem", "E", "8"][..],
        &["verify-theorem", "B", "2"],
        &["takiff", "A", "4"],
        &["projector", "A", "3"],
        &["combinatorics", "D", "2"],
        &["combinatorics", "all", "9"],
        &["verify-theorem", "all", "2"],
        &["frobnicate", "A", "1"],
        &["verify-theorem", "A"],
    ] {
        let out = lie_jacobi(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn combinatorics_rows() {
    let (code, text) = json(&["combinatorics", "B", "6"], None);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let b6 = &rows[4];
    assert_eq!(b6["simple_type"], "B6");
    assert_eq!(b6["weyl_order"], 46080);
    assert_eq!(b6["kostant_lhs"], "46080/1");
    assert!(b6["poincare"].is_null());
    assert_eq!(rows[0]["poincare_equal"], true);

    let (_, text) = json(&["combinatorics", "A", "1"], None);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rows"][0]["kostant_lhs"], "2/1");
    assert_eq!(v["rows"][0]["weyl_order"], 2);
}

#[test]
fn takiff_and_projector_pass() {
    let (code, text) = json(&["takiff", "A", "1"], None);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rows"][0]["cartan_part_text"], "(2*h1 + 4)*(h1.u)");
    let obstruction = &v["rows"][1];
    assert_eq!(obstruction["kind"], "obstruction");
    assert_eq!(obstruction["psi_of_commutator"], "2*h1.u");
    assert_eq!(obstruction["bracket_u"], "h1.u");

    let (code, text) = json(&["projector", "A", "1", "--seed", "3"], None);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["config"]["seed"], 3);
    let rows = v["rows"].as_array().unwrap();
    let killed = rows
        .iter()
        .find(|r| r["property"] == "lowered_vector_killed")
        .unwrap();
    assert_eq!(killed["detail"], "p(f1*v) = 0");
    let pole = rows.iter().find(|r| r["property"] == "pole_detected").unwrap();
    assert_eq!(pole["expected_error"], true);
    assert_eq!(pole["ok"], true);
}

#[test]
fn reports_are_deterministic_and_cache_neutral() {
    let dir = tempfile::tempdir().unwrap();
    let (_, plain) = json(&["verify-theorem", "A", "2", "--jobs", "1"], None);
    let (_, again) = json(&["verify-theorem", "A", "2", "--jobs", "3"], None);
    let (_, cold) = json(&["verify-theorem", "A", "2"], Some(dir.path()));
    let (_, warm) = json(&["verify-theorem", "A", "2"], Some(dir.path()));
    assert_eq!(plain, again);
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
    assert!(dir.path().join("A2").join("p1-1.txt").exists());

    let (_, t_cold) = json(&["takiff", "A", "2"], Some(dir.path()));
    let (_, t_warm) = json(&["takiff", "A", "2", "--cache", dir.path().to_str().unwrap()], None);
    assert_eq!(t_cold, t_warm);
}

#[test]
fn warm_cache_is_used_and_bad_entries_are_replaced() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig::new(Cmd::VerifyTheorem, "A", 2);
    let cold = Cache::new(Some(dir.path().to_path_buf()));
    let first = lie_jacobi::run_with_cache(&cfg, &cold).unwrap().to_json();
    assert_eq!((cold.hits(), cold.misses()), (0, 4));

    let warm = Cache::new(Some(dir.path().to_path_buf()));
    assert_eq!(lie_jacobi::run_with_cache(&cfg, &warm).unwrap().to_json(), first);
    assert_eq!((warm.hits(), warm.misses()), (4, 0));

    // a stale stamp and a garbled body are both recomputed
    let p1 = dir.path().join("A2").join("p1-1.txt");
    let text = fs::read_to_string(&p1).unwrap();
    assert!(text.starts_with(&format!("lie-jacobi cache\nschema {SCHEMA_VERSION}\nstamp ")));
    fs::write(&p1, text.replacen("stamp ", "stamp 0", 1)).unwrap();
    let p = dir.path().join("A2").join("p-2.txt");
    let text = fs::read_to_string(&p).unwrap();
    let header: Vec<&str> = text.splitn(4, '\n').take(3).collect();
    fs::write(&p, format!("{}\nnot a polynomial\n", header.join("\n"))).unwrap();

    let repaired = Cache::new(Some(dir.path().to_path_buf()));
    assert_eq!(lie_jacobi::run_with_cache(&cfg, &repaired).unwrap().to_json(), first);
    assert_eq!((repaired.hits(), repaired.misses()), (2, 2));
    let again = Cache::new(Some(dir.path().to_path_buf()));
    lie_jacobi::run_with_cache(&cfg, &again).unwrap();
    assert_eq!(again.misses(), 0);
}

#[test]
fn cache_round_trip_by_key() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(Some(dir.path().to_path_buf()));
    let key = ArtifactKey {
        simple_type: SimpleType::a(1).unwrap(),
        artifact: Artifact::TakiffElement,
        index: 0,
    };
    assert!(cache.load(&key, "abc").is_none());
    cache.store(&key, "abc", "body\n").unwrap();
    assert_eq!(cache.load(&key, "abc").as_deref(), Some("body\n"));
    assert!(cache.load(&key, "abd").is_none());
    let leftovers: Vec<_> = fs::read_dir(dir.path().join("A1")).unwrap().collect();
    assert_eq!(leftovers.len(), 1);
}
