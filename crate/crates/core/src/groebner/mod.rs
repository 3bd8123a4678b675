//! Polynomial ideals over prime fields: Buchberger's algorithm, projective
//! emptiness of homogeneous ideals and the Jacobian smoothness criterion.

mod buchberger;
mod ideals;
mod poly;

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use buchberger::{groebner_basis, Budget, GbStats};
pub use ideals::{
    decomposable_vector_ideal, grassmannian_plucker_relations, parse_ideal, sextic_singular_ideal, sixfold_ideal,
    three_term_relations, x3_ideal, x5_ideal, IdealText,
};
pub use poly::{FPoly, Fp, Mono, MAX_VARS};

use crate::arith::{MultiPoly, Rational};
use crate::linalg::subsets;
use crate::polytext::ParseError;

/// Primes used for multi-prime agreement.
pub const PRIMES: [u32; 3] = [32003, 65537, 1000003];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("a coefficient denominator vanishes modulo {0}")]
    BadDenominator(u32),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("ideal has no nonzero generators")]
    Empty,
    #[error("generators live in different rings")]
    RingMismatch,
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("budget exhausted after {pairs} S-pairs: {reason}")]
    BudgetExhausted { reason: String, pairs: usize },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("ideal file: {0}")]
    Format(String),
}

/// A finitely generated ideal of `F_p[x_0…x_{n−1}]` with its cached reduced
/// Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    field: Fp,
    nvars: usize,
    gens: Vec<FPoly>,
    basis: Option<Vec<FPoly>>,
    stats: GbStats,
}

/// Outcome of a projective emptiness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Emptiness {
    pub empty: bool,
    /// Variables with no pure power among the leading monomials.
    pub missing: Vec<usize>,
    pub basis_size: usize,
}

/// Outcome of a Jacobian smoothness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Smoothness {
    pub smooth: bool,
    /// Dimension of the affine cone of the scheme itself.
    pub cone_dimension: usize,
    pub expected_cone_dimension: usize,
    pub minors_total: usize,
    pub minors_used: usize,
    pub subsampled: bool,
    pub emptiness: Emptiness,
}

/// Options for [`Ideal::smoothness_check`].
#[derive(Clone, Debug)]
pub struct SmoothnessOptions {
    /// Try a random sample of this many minors before using all of them.
    pub minor_sample: Option<usize>,
    pub seed: u64,
}

impl Default for SmoothnessOptions {
    fn default() -> Self {
        SmoothnessOptions { minor_sample: None, seed: 0 }
    }
}

impl Ideal {
    pub fn new(gens: Vec<FPoly>) -> Result<Ideal, GroebnerError> {
        let gens: Vec<FPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let first = gens.first().ok_or(GroebnerError::Empty)?;
        let (field, nvars) = (first.field(), first.nvars());
        if gens.iter().any(|g| g.field() != field || g.nvars() != nvars) {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(Ideal { field, nvars, gens, basis: None, stats: GbStats::default() })
    }

    /// Reduces rational generators modulo `p`.
    pub fn from_rational(p: u32, gens: &[MultiPoly<Rational>]) -> Result<Ideal, GroebnerError> {
        let field = Fp::new(p)?;
        Ideal::new(gens.iter().map(|g| FPoly::from_rational(field, g)).collect::<Result<_, _>>()?)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[FPoly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(FPoly::is_homogeneous)
    }

    fn check_homogeneous(&self) -> Result<(), GroebnerError> {
        match self.gens.iter().position(|g| !g.is_homogeneous()) {
            Some(k) => Err(GroebnerError::NotHomogeneous(k)),
            None => Ok(()),
        }
    }

    /// Cached reduced Gröbner basis, if computed.
    pub fn basis(&self) -> Option<&[FPoly]> {
        self.basis.as_deref()
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    pub fn groebner(&mut self, budget: &Budget) -> Result<&[FPoly], GroebnerError> {
        if self.basis.is_none() {
            let (g, stats) = groebner_basis(&self.gens, budget)?;
            self.basis = Some(g);
            self.stats = stats;
        }
        Ok(self.basis.as_deref().expect("just computed"))
    }

    /// Normal form with respect to the cached basis.
    pub fn normal_form(&self, f: &FPoly) -> Option<FPoly> {
        let g = self.basis.as_ref()?;
        Some(buchberger::reduce_with(f, |t| g.iter().find(|h| h.lm().divides(t))))
    }

    pub fn contains(&self, f: &FPoly) -> Option<bool> {
        self.normal_form(f).map(|r| r.is_zero())
    }

    /// The ideal with extra generators; the cached basis is dropped.
    pub fn with_generators(&self, extra: impl IntoIterator<Item = FPoly>) -> Result<Ideal, GroebnerError> {
        Ideal::new(self.gens.iter().cloned().chain(extra).collect())
    }

    /// Whether the projective zero set over the algebraic closure is empty:
    /// every variable has a pure power among the leading monomials.
    pub fn projective_empty(&mut self, budget: &Budget) -> Result<Emptiness, GroebnerError> {
        self.check_homogeneous()?;
        let nvars = self.nvars;
        let g = self.groebner(budget)?;
        let mut seen = vec![false; nvars];
        for f in g {
            if f.lm() == Mono::ONE {
                seen.iter_mut().for_each(|s| *s = true);
            } else if let Some(i) = f.lm().pure_power_of() {
                seen[i] = true;
            }
        }
        let missing: Vec<usize> = (0..nvars).filter(|&i| !seen[i]).collect();
        Ok(Emptiness { empty: missing.is_empty(), missing, basis_size: g.len() })
    }

    /// Krull dimension of the quotient ring, read off the leading monomials
    /// as the largest set of variables containing no leading monomial.
    pub fn dimension(&mut self, budget: &Budget) -> Result<usize, GroebnerError> {
        let nvars = self.nvars;
        let supports: Vec<u32> = self
            .groebner(budget)?
            .iter()
            .map(|f| (0..nvars).filter(|&v| f.lm().exp(v) > 0).fold(0u32, |acc, v| acc | 1 << v))
            .collect();
        Ok(largest_independent(&supports, nvars, 0, 0))
    }

    pub fn jacobian(&self) -> Vec<Vec<FPoly>> {
        self.gens.iter().map(|g| (0..self.nvars).map(|v| g.derivative(v)).collect()).collect()
    }

    /// Jacobian criterion: the projective scheme has codimension `codim` and
    /// is smooth iff its cone has dimension `nvars − codim` and the ideal plus
    /// all `codim × codim` Jacobian minors has empty zero set.
    pub fn smoothness_check(&self, codim: usize, budget: &Budget, opts: &SmoothnessOptions) -> Result<Smoothness, GroebnerError> {
        self.check_homogeneous()?;
        assert!(codim >= 1 && codim < self.nvars, "codimension out of range");
        let cone_dimension = self.clone().dimension(budget)?;
        let expected_cone_dimension = self.nvars - codim;
        let jac = self.jacobian();
        let rows = subsets(self.gens.len(), codim);
        let cols = subsets(self.nvars, codim);
        let total = rows.len() * cols.len();
        let verdict = |e: Emptiness, used: usize, subsampled: bool| Smoothness {
            smooth: e.empty && cone_dimension == expected_cone_dimension,
            cone_dimension,
            expected_cone_dimension,
            minors_total: total,
            minors_used: used,
            subsampled,
            emptiness: e,
        };
        let minors_for = |idx: &[usize]| -> Vec<FPoly> {
            idx.par_iter()
                .map(|&k| {
                    let (r, c) = (&rows[k / cols.len()], &cols[k % cols.len()]);
                    let sub: Vec<Vec<FPoly>> = r.iter().map(|&i| c.iter().map(|&j| jac[i][j].clone()).collect()).collect();
                    poly_det(&sub, self.field, self.nvars)
                })
                .filter(|m| !m.is_zero())
                .collect()
        };
        if let Some(cap) = opts.minor_sample.filter(|&c| c < total) {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut idx = sample(&mut rng, total, cap).into_vec();
            idx.sort_unstable();
            let mut sub = self.with_generators(minors_for(&idx))?;
            let e = sub.projective_empty(budget)?;
            if e.empty {
                return Ok(verdict(e, cap, true));
            }
        }
        let all: Vec<usize> = (0..total).collect();
        let mut full = self.with_generators(minors_for(&all))?;
        let e = full.projective_empty(budget)?;
        Ok(verdict(e, total, false))
    }
}

/// Size of the largest set of variables `≥ from` that, together with `chosen`,
/// contains no support.
fn largest_independent(supports: &[u32], nvars: usize, from: usize, chosen: u32) -> usize {
    if from == nvars {
        return 0;
    }
    let with = chosen | 1 << from;
    let take = if supports.iter().all(|&s| s & !with != 0) { 1 + largest_independent(supports, nvars, from + 1, with) } else { 0 };
    if take == nvars - from {
        return take;
    }
    take.max(largest_independent(supports, nvars, from + 1, chosen))
}

/// Determinant by cofactor expansion along the first row.
fn poly_det(m: &[Vec<FPoly>], field: Fp, nvars: usize) -> FPoly {
    match m.len() {
        0 => FPoly::constant(field, nvars, 1),
        1 => m[0][0].clone(),
        n => {
            let mut acc = FPoly::zero(field, nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<FPoly>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
                let t = m[0][j].mul(&poly_det(&minor, field, nvars));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

/// Per-prime outcome of a check run at several primes.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeRun<T> {
    pub prime: u32,
    pub result: T,
    pub elapsed: Duration,
}

/// Runs `check` at each prime concurrently, in prime order.
pub fn at_primes<T: Send>(
    primes: &[u32],
    check: impl Fn(u32) -> Result<T, GroebnerError> + Sync,
) -> Result<Vec<PrimeRun<T>>, GroebnerError> {
    primes
        .par_iter()
        .map(|&p| {
            let t = Instant::now();
            let result = check(p)?;
            Ok(PrimeRun { prime: p, result, elapsed: t.elapsed() })
        })
        .collect()
}

#[cfg(test)]
mod tests;
