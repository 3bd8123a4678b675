use std::collections::BTreeSet;

use super::*;
use crate::fixtures::FixtureSet;

#[test]
fn ids_are_unique_and_grouped() {
    let ids: BTreeSet<&str> = CHECKS.iter().map(|c| c.id).collect();
    assert_eq!(ids.len(), CHECKS.len());
    for c in CHECKS {
        assert!(!c.suites.is_empty(), "{}", c.id);
        assert!(!c.statement.is_empty());
    }
    let all: Vec<&str> = suite_checks(Suite::All).iter().map(|c| c.id).collect();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    assert!(all.contains(&"groebner.x3") && !all.contains(&"groebner.x5"));
    let fast: Vec<&str> = suite_checks(Suite::Fast).iter().map(|c| c.id).collect();
    for id in ["sextic.coefficients", "group.character-table", "group.lefschetz", "epw.strata"] {
        assert!(fast.contains(&id), "{id}");
    }
    assert!(suite_checks(Suite::Slow).iter().all(|c| c.id.starts_with("groebner.")));
    assert_eq!("groebner".parse::<Suite>(), Ok(Suite::Groebner));
    assert!("quick".parse::<Suite>().is_err());
}

#[test]
fn lattice_and_hermitian_suites_pass() {
    let f = Fixtures::embedded();
    let opts = RunOptions::default();
    for suite in [Suite::Lattice, Suite::Hermitian] {
        let reports = run_suite(suite, &f, &opts);
        assert!(!reports.is_empty());
        assert!(all_passed(&reports), "{reports:#?}");
    }
}

#[test]
fn corrupted_matrix_fails_with_witness() {
    let mut set = FixtureSet::embedded();
    let text = set.text("mat10.txt").replacen("\n4; 2l;", "\n5; 2l;", 1);
    set.set("mat10.txt", text);
    let f = set.load().unwrap();
    let r = find_check("hermitian.mat10").unwrap().execute(&Context { fixtures: &f, options: &RunOptions::default() });
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.witness["row"], "0");
    assert_eq!(r.witness["expected"], "5");
}

#[test]
fn budget_exhaustion_is_reported() {
    let f = Fixtures::embedded();
    let opts = RunOptions { max_pairs: 3, primes: vec![32003], ..RunOptions::default() };
    let r = find_check("groebner.decomposable").unwrap().execute(&Context { fixtures: &f, options: &opts });
    assert_eq!(r.verdict, Verdict::BudgetExhausted);
    assert!(!all_passed(&[r]));
}

#[test]
fn report_json_uses_strings() {
    let r = VerificationReport {
        id: "x",
        statement: "y",
        verdict: Verdict::BudgetExhausted,
        witness: serde_json::json!({ "pairs": "3" }),
        elapsed: Duration::from_millis(12),
    };
    let v = r.to_json(true);
    assert_eq!(v["verdict"], "budget-exhausted");
    assert_eq!(v["elapsed_ms"], 12);
    assert!(r.to_json(false).get("elapsed_ms").is_none());
}
