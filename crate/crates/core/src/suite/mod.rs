//! Named verification checks grouped into suites.

mod checks;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::fixtures::Fixtures;
use crate::groebner::{Budget, GroebnerError};

pub use checks::CHECKS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Fast,
    Lattice,
    Hermitian,
    Group,
    Epw,
    Groebner,
    /// Long Gröbner computations that do not gate `all`.
    Slow,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Fast, Suite::Lattice, Suite::Hermitian, Suite::Group, Suite::Epw, Suite::Groebner, Suite::Slow, Suite::All];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fast => "fast",
            Suite::Lattice => "lattice",
            Suite::Hermitian => "hermitian",
            Suite::Group => "group",
            Suite::Epw => "epw",
            Suite::Groebner => "groebner",
            Suite::Slow => "slow",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    BudgetExhausted,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
            Verdict::BudgetExhausted => "budget-exhausted",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The result of one check.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub verdict: Verdict,
    /// Evidence on success, the first mismatch on failure.
    pub witness: Value,
    pub elapsed: Duration,
}

impl VerificationReport {
    /// One JSON object; `timings: false` drops the elapsed time.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "id": self.id,
            "statement": self.statement,
            "verdict": self.verdict,
            "witness": self.witness,
        });
        if timings {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<16} {:<28} {:>8} ms  {}", self.verdict.name(), self.id, self.elapsed.as_millis(), self.statement)?;
        if self.verdict != Verdict::Pass {
            write!(f, "\n    witness: {}", self.witness)?;
        }
        Ok(())
    }
}

/// Knobs shared by all checks.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Primes for the Gröbner checks; agreement is required at all of them.
    pub primes: Vec<u32>,
    pub max_pairs: usize,
    pub max_degree: u32,
    /// Wall-clock limit per Gröbner computation.
    pub time_limit: Option<Duration>,
    /// Jacobian minors tried before the full set.
    pub minor_sample: Option<usize>,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        let b = Budget::default();
        RunOptions {
            primes: vec![32003, 65537],
            max_pairs: b.max_pairs,
            max_degree: b.max_degree,
            time_limit: None,
            minor_sample: None,
            seed: 0,
        }
    }
}

impl RunOptions {
    pub fn budget(&self) -> Budget {
        Budget { max_pairs: self.max_pairs, max_degree: self.max_degree, deadline: self.time_limit.map(|d| Instant::now() + d) }
    }
}

/// What a check returns.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub witness: Value,
}

impl Outcome {
    pub fn pass(witness: Value) -> Self {
        Outcome { verdict: Verdict::Pass, witness }
    }

    pub fn fail(witness: Value) -> Self {
        Outcome { verdict: Verdict::Fail, witness }
    }

    pub fn error(e: impl fmt::Display) -> Self {
        Outcome::fail(json!({ "error": e.to_string() }))
    }

    pub fn groebner(e: GroebnerError) -> Self {
        match e {
            GroebnerError::BudgetExhausted { reason, pairs } => Outcome {
                verdict: Verdict::BudgetExhausted,
                witness: json!({ "reason": reason, "pairs": pairs.to_string() }),
            },
            e => Outcome::error(e),
        }
    }
}

/// Shared inputs of a run.
pub struct Context<'a> {
    pub fixtures: &'a Fixtures,
    pub options: &'a RunOptions,
}

/// A named check and the suites that include it.
pub struct Check {
    pub id: &'static str,
    pub statement: &'static str,
    pub suites: &'static [Suite],
    pub run: fn(&Context) -> Outcome,
}

impl Check {
    pub fn in_suite(&self, suite: Suite) -> bool {
        match suite {
            Suite::All => !self.suites.contains(&Suite::Slow),
            s => self.suites.contains(&s),
        }
    }

    pub fn execute(&self, ctx: &Context) -> VerificationReport {
        let t = Instant::now();
        let outcome = (self.run)(ctx);
        VerificationReport {
            id: self.id,
            statement: self.statement,
            verdict: outcome.verdict,
            witness: outcome.witness,
            elapsed: t.elapsed(),
        }
    }
}

pub fn find_check(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

/// Checks of a suite, sorted by id.
pub fn suite_checks(suite: Suite) -> Vec<&'static Check> {
    let mut v: Vec<&'static Check> = CHECKS.iter().filter(|c| c.in_suite(suite)).collect();
    v.sort_by_key(|c| c.id);
    v
}

/// Runs the checks concurrently; reports come back sorted by id.
pub fn run_checks(checks: &[&Check], fixtures: &Fixtures, options: &RunOptions) -> Vec<VerificationReport> {
    let ctx = Context { fixtures, options };
    let mut out: Vec<VerificationReport> = checks.par_iter().map(|c| c.execute(&ctx)).collect();
    out.sort_by_key(|r| r.id);
    out
}

pub fn run_suite(suite: Suite, fixtures: &Fixtures, options: &RunOptions) -> Vec<VerificationReport> {
    run_checks(&suite_checks(suite), fixtures, options)
}

/// Whether every non-skipped report passed.
pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| matches!(r.verdict, Verdict::Pass | Verdict::Skipped))
}

#[cfg(test)]
mod tests;
