use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::{Lattice, LatticeError};
use crate::arith::{Field, Rational};
use crate::linalg::Matrix;

/// A lattice vector with its norm.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm: BigInt,
}

/// `q(x) = Σ_i d_i (x_i + Σ_{j>i} μ_ij x_j)²` for a positive definite Gram.
struct Cholesky {
    d: Vec<Rational>,
    mu: Matrix<Rational>,
}

fn cholesky(g: &Matrix<Rational>) -> Cholesky {
    let n = g.rows();
    let mut q = g.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = q[(i, j)].clone() / &q[(i, i)];
        }
        for k in i + 1..n {
            for l in k..n {
                q[(k, l)] = q[(k, l)].clone() - q[(k, i)].clone() * &q[(i, l)];
            }
        }
    }
    Cholesky { d: (0..n).map(|i| q[(i, i)].clone()).collect(), mu: q }
}

/// Integers `x` with `(x − c)² ≤ t`.
fn integer_window(c: &Rational, t: &Rational) -> Option<(i64, i64)> {
    if t.is_negative() {
        return None;
    }
    let fits = |x: i64| {
        let e = Rational::from_i64(x) - c;
        &e * &e <= *t
    };
    let cf = c.to_f64().unwrap_or(0.0);
    let r = t.to_f64().unwrap_or(0.0).sqrt();
    let mut lo = (cf - r).floor() as i64 - 1;
    let mut hi = (cf + r).ceil() as i64 + 1;
    while lo <= hi && !fits(lo) {
        lo += 1;
    }
    while hi >= lo && !fits(hi) {
        hi -= 1;
    }
    if lo > hi {
        return None;
    }
    while fits(lo - 1) {
        lo -= 1;
    }
    while fits(hi + 1) {
        hi += 1;
    }
    Some((lo, hi))
}

impl Cholesky {
    /// Center of coordinate `i` given the coordinates above it.
    fn center(&self, i: usize, x: &[i64]) -> Rational {
        let mut c = Rational::from_i64(0);
        for j in i + 1..x.len() {
            if x[j] != 0 {
                c = c - self.mu[(i, j)].clone() * Rational::from_i64(x[j]);
            }
        }
        c
    }

    fn descend(&self, i: usize, x: &mut Vec<i64>, remaining: &Rational, out: &mut Vec<Vec<i64>>) {
        let c = self.center(i, x);
        let t = remaining.clone() / &self.d[i];
        let Some((lo, hi)) = integer_window(&c, &t) else { return };
        for v in lo..=hi {
            x[i] = v;
            let e = Rational::from_i64(v) - &c;
            let rest = remaining.clone() - self.d[i].clone() * &e * &e;
            if i == 0 {
                out.push(x.clone());
            } else {
                self.descend(i - 1, x, &rest, out);
            }
        }
        x[i] = 0;
    }
}

impl Lattice {
    fn definite_gram(&self) -> Result<(Matrix<Rational>, i64), LatticeError> {
        let sign = match self.definiteness() {
            0 => return Err(LatticeError::Indefinite),
            s => s as i64,
        };
        Ok((self.gram().to_rational().scale(&Rational::from_i64(sign)), sign))
    }

    /// All nonzero `v` with `|q(v)| ≤ bound`, by Fincke–Pohst enumeration
    /// with exact rational Cholesky data. Sorted; closed under negation.
    pub fn short_vectors(&self, bound: u64) -> Result<Vec<ShortVector>, LatticeError> {
        let (g, sign) = self.definite_gram()?;
        let n = self.rank();
        let ch = cholesky(&g);
        let b = Rational::from_integer(BigInt::from(bound));
        let top = n - 1;
        let Some((lo, hi)) = integer_window(&Rational::from_i64(0), &(b.clone() / &ch.d[top])) else {
            return Ok(Vec::new());
        };
        let mut coords: Vec<Vec<i64>> = (lo..=hi)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut x = vec![0i64; n];
                x[top] = v;
                let e = Rational::from_i64(v);
                let rest = b.clone() - ch.d[top].clone() * &e * &e;
                let mut out = Vec::new();
                if top == 0 {
                    out.push(x);
                } else {
                    ch.descend(top - 1, &mut x, &rest, &mut out);
                }
                out
            })
            .filter(|x| x.iter().any(|&a| a != 0))
            .collect();
        coords.sort();
        Ok(coords
            .into_iter()
            .map(|c| {
                let norm = self.norm(&c).expect("dimension matches");
                debug_assert!(norm.is_positive() == (sign > 0));
                ShortVector { coords: c, norm }
            })
            .collect())
    }

    /// Vectors with `q(v) = value`.
    pub fn vectors_of_norm(&self, value: i64) -> Result<Vec<ShortVector>, LatticeError> {
        let all = self.short_vectors(value.unsigned_abs())?;
        let target = BigInt::from(value);
        Ok(all.into_iter().filter(|v| v.norm == target).collect())
    }

    /// Values `q(v)` with `0 < |q(v)| ≤ bound`, optionally over primitive `v` only.
    pub fn represented_values(&self, bound: u64, primitive: bool) -> Result<BTreeSet<BigInt>, LatticeError> {
        Ok(self
            .short_vectors(bound)?
            .into_iter()
            .filter(|v| !primitive || v.coords.iter().fold(0i64, |g, &a| g.gcd(&a)) == 1)
            .map(|v| v.norm)
            .collect())
    }

    pub fn represents(&self, value: i64) -> Result<bool, LatticeError> {
        Ok(value == 0 || self.represented_values(value.unsigned_abs(), false)?.contains(&BigInt::from(value)))
    }

    pub fn primitively_represents(&self, value: i64) -> Result<bool, LatticeError> {
        if value == 0 {
            self.definite_gram()?;
            return Ok(false);
        }
        Ok(self.represented_values(value.unsigned_abs(), true)?.contains(&BigInt::from(value)))
    }
}
