//! End-to-end acceptance run: one line per criterion with its runtime.

use std::time::{Duration, Instant};

use klein_core::fixtures::Fixtures;
use klein_core::klein::{gen_a, gen_c, weil_outside_borel, GroupTable, CLOSURE_CAP};
use klein_core::suite::{find_check, Context, RunOptions, Verdict};

struct Criterion {
    number: u32,
    title: &'static str,
    checks: &'static [&'static str],
    limit: Option<Duration>,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: [Criterion; 12] = [
    Criterion { number: 1, title: "sextic reproduction", checks: &["sextic.coefficients"], limit: secs(60) },
    Criterion { number: 2, title: "group reconstruction", checks: &["group.closure"], limit: secs(120) },
    Criterion { number: 3, title: "character table", checks: &["group.character-table"], limit: secs(30) },
    Criterion { number: 4, title: "invariant quadric", checks: &["group.invariant-quadric"], limit: None },
    Criterion { number: 5, title: "Lefschetz counts", checks: &["group.lefschetz"], limit: None },
    Criterion { number: 6, title: "strata", checks: &["epw.strata", "epw.self-duality"], limit: None },
    Criterion { number: 7, title: "order-5 and order-2 lines", checks: &["epw.order5-line", "epw.order2-line"], limit: None },
    Criterion {
        number: 8,
        title: "lattice suite",
        checks: &["lattice.h-perp", "lattice.eleven-part", "lattice.norm-two", "lattice.picard-isotropic", "lattice.gluing"],
        limit: secs(60),
    },
    Criterion { number: 9, title: "representability", checks: &["lattice.representability"], limit: secs(120) },
    Criterion {
        number: 10,
        title: "Hermitian suite",
        checks: &["hermitian.hprime", "hermitian.mat10", "hermitian.polarization"],
        limit: secs(30),
    },
    Criterion { number: 11, title: "invariant form", checks: &["group.invariant-form"], limit: secs(300) },
    Criterion { number: 12, title: "Groebner gates", checks: &["groebner.decomposable", "groebner.x3"], limit: secs(7200) },
];

/// Closure from scratch, so that criterion 2 is not timed against a cached table.
fn fresh_closure() -> Result<usize, String> {
    let w = weil_outside_borel().map_err(|e| e.to_string())?;
    let t = GroupTable::generate(&[gen_a(), gen_c(), w], CLOSURE_CAP).map_err(|e| e.to_string())?;
    Ok(t.len())
}

#[test]
fn acceptance() {
    let fixtures = Fixtures::embedded();
    let options = RunOptions { primes: vec![32003, 65537], time_limit: Some(Duration::from_secs(7200)), ..RunOptions::default() };
    let ctx = Context { fixtures: &fixtures, options: &options };
    let mut failures = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let mut problems = Vec::new();
        if c.number == 2 {
            match fresh_closure() {
                Ok(660) => {}
                Ok(n) => problems.push(format!("closure has {n} elements")),
                Err(e) => problems.push(e),
            }
        }
        for id in c.checks {
            let r = find_check(id).expect("registered check").execute(&ctx);
            if r.verdict != Verdict::Pass {
                problems.push(format!("{id}: {} {}", r.verdict, r.witness));
            }
        }
        let elapsed = start.elapsed();
        if let Some(limit) = c.limit.filter(|l| elapsed > *l) {
            problems.push(format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
        }
        let limit = c.limit.map(|l| format!("limit {} s", l.as_secs())).unwrap_or_else(|| "no limit".into());
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}  {:<28} {:>9.3} s  ({limit})", c.number, c.title, elapsed.as_secs_f64());
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failures.push(c.number);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
