use std::fs;
use std::process::{Command, Output};

use klein_core::fixtures;
use klein_core::polytext::{default_names, parse_polynomial, polynomial_from_json};
use serde_json::Value;

fn klein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klein")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn fast_suite_passes() {
    let o = klein(&["verify", "fast"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for id in ["sextic.coefficients", "group.character-table", "group.lefschetz", "epw.strata"] {
        assert!(out.contains(id), "{id}");
    }
}

#[test]
fn lattice_suite_emits_json_lines() {
    let o = klein(&["verify", "lattice", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|v| v["verdict"] == "pass" && v["id"].as_str().unwrap().starts_with("lattice.")));
    assert!(lines.iter().all(|v| v["elapsed_ms"].is_u64()));
}

#[test]
fn json_output_is_deterministic_without_timings() {
    let run = || stdout(&klein(&["verify", "fast", "--json", "--no-timings"]));
    assert_eq!(run(), run());
}

#[test]
fn groebner_suite_at_one_prime() {
    let o = klein(&["verify", "groebner", "--prime", "32003", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let lines = json_lines(&o);
    assert_eq!(lines[1]["id"], "groebner.x3");
    assert_eq!(lines[1]["witness"]["primes"][0]["cone_dimension"], "4");
}

#[test]
fn corrupted_threefold_fixture_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let bad = fixtures::X3.replacen("x01*x23 - x02*x13", "x01*x23 + x02*x13", 1);
    assert_ne!(bad, fixtures::X3);
    fs::write(dir.path().join("x3.txt"), bad).unwrap();
    let o = klein(&["verify", "groebner", "--prime", "32003", "--json", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let x3 = json_lines(&o).into_iter().find(|v| v["id"] == "groebner.x3").unwrap();
    assert_eq!(x3["verdict"], "fail");
    assert_eq!(x3["witness"]["generator"], "0");
    assert!(x3["witness"]["fixture"].as_str().unwrap().contains("+ x02*x13"));
}

#[test]
fn corrupted_sextic_fixture_names_the_monomial() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("sextic.txt"), fixtures::SEXTIC.replacen("x0^6", "2*x0^6", 1)).unwrap();
    let o = klein(&["verify", "epw", "--check", "sextic.coefficients", "--json", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r = &json_lines(&o)[0];
    assert_eq!(r["witness"]["monomial"], "x0^6");
    assert_eq!(r["witness"]["expected"], "2");
    assert_eq!(r["witness"]["computed"], "1");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("char_table.txt"), "classes: 1\n").unwrap();
    let o = klein(&["verify", "fast", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("char_table.txt"));
    assert_eq!(klein(&["verify", "quick"]).status.code(), Some(2));
    assert_eq!(klein(&["verify", "fast", "--check", "no.such"]).status.code(), Some(2));
    assert_eq!(klein(&["stratum", "--point", "1,2,3"]).status.code(), Some(2));
    assert_eq!(klein(&["lattice", "U++U"]).status.code(), Some(2));
}

#[test]
fn emitted_sextic_round_trips() {
    let text = klein(&["emit-sextic"]);
    assert_eq!(text.status.code(), Some(0));
    let text = stdout(&text);
    assert!(text.starts_with("x0^6 "));
    let names = default_names(6);
    let parsed = parse_polynomial(text.trim(), &names).unwrap();
    assert_eq!(parsed, fixtures::sextic().unwrap());
    let json: Value = serde_json::from_str(&stdout(&klein(&["emit-sextic", "--format", "json"]))).unwrap();
    assert_eq!(json["term_count"], parsed.len().to_string());
    assert_eq!(polynomial_from_json(&json["terms"], 6).unwrap(), parsed);
    assert_eq!(parse_polynomial(json["text"].as_str().unwrap(), &names).unwrap(), parsed);
    assert_eq!(stdout(&klein(&["emit-sextic"])), text);
}

#[test]
fn table_commands() {
    let ct: Value = serde_json::from_str(&stdout(&klein(&["char-table", "--json"]))).unwrap();
    assert_eq!(ct["sizes"].as_array().unwrap().len(), 8);
    assert_eq!(ct["characters"]["wedge2_xi"][7], "-2");
    let fp: Value = serde_json::from_str(&stdout(&klein(&["fixed-points", "--json"]))).unwrap();
    let rows = fp.as_array().unwrap();
    let row = |label: &str| rows.iter().find(|r| r["class"] == label).unwrap().clone();
    assert_eq!(row("a")["surface"], "2");
    assert_eq!(row("a")["fourfold"], "8");
    assert_eq!(row("b3")["fourfold"], "dim2");
}

#[test]
fn stratum_and_lattice_commands() {
    let v: Value =
        serde_json::from_str(&stdout(&klein(&["stratum", "--point", "0,1,0,0,0,0", "--hyperplane", "1,0,0,0,0,0", "--json"]))).unwrap();
    assert_eq!(v["l"], "2");
    assert_eq!(v["gm_dimension"], "5");
    let v: Value = serde_json::from_str(&stdout(&klein(&["lattice", "E8(-1)", "--short", "2", "--json"]))).unwrap();
    assert_eq!(v["det"], "1");
    assert_eq!(v["short_vectors"]["-2"], "240");
    let v: Value = serde_json::from_str(&stdout(&klein(&["lattice", "[[-2,-1],[-1,-6]]", "--json"]))).unwrap();
    assert_eq!(v["disc"]["orders"][0], "11");
}

#[test]
fn hermitian_command() {
    assert_eq!(klein(&["hermitian", "--check", "mat10"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    fs::write(&path, "2; l\nlb; 2").unwrap();
    let v: Value = serde_json::from_str(&stdout(&klein(&["hermitian", path.to_str().unwrap(), "--json"]))).unwrap();
    // det = 4 − N(l) = 4 − 3
    assert_eq!(v["det"], "1");
    assert_eq!(v["positive_definite"], true);
    fs::write(&path, "2; l\nl; 2").unwrap();
    assert_eq!(klein(&["hermitian", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn groebner_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.txt");
    fs::write(&path, "vars: x y z\nx*y - z^2").unwrap();
    let o = klein(&["groebner", path.to_str().unwrap(), "--codim", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["primes"].as_array().unwrap().len(), 2);
    // a nonempty zero set is a failed emptiness test
    assert_eq!(klein(&["groebner", path.to_str().unwrap()]).status.code(), Some(1));
    fs::write(&path, "vars: x y z w\nx^3 - y*z*w; y^3 - x*z^2; z^3 - x*y*w; w^3 - x^2*y").unwrap();
    let o = klein(&["groebner", path.to_str().unwrap(), "--budget-pairs", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "budget-exhausted");
}
