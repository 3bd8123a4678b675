//! Hermitian forms over `Z[λ]`, their second exterior powers and the
//! polarization invariants read off characteristic polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{CycloNum, Field, QuadInt, Rational};
use crate::klein::CMat;
use crate::linalg::{bareiss_det, subsets};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HermitianError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("entry ({row}, {col}) is not the conjugate of its mirror")]
    NotHermitian { row: usize, col: usize },
    #[error("determinant {0} is not a rational integer")]
    NonIntegerDeterminant(String),
    #[error("line {line}, entry {entry}: cannot parse `{text}`")]
    Parse { line: usize, entry: usize, text: String },
    #[error("characteristic polynomial coefficient is not an integer")]
    NonIntegerCoefficient,
}

/// A square matrix over `Z[λ]` equal to its conjugate transpose.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<QuadInt>>", into = "Vec<Vec<QuadInt>>")]
pub struct HermMatrix {
    n: usize,
    data: Vec<QuadInt>,
}

impl TryFrom<Vec<Vec<QuadInt>>> for HermMatrix {
    type Error = HermitianError;
    fn try_from(rows: Vec<Vec<QuadInt>>) -> Result<Self, Self::Error> {
        HermMatrix::new(rows)
    }
}

impl From<HermMatrix> for Vec<Vec<QuadInt>> {
    fn from(m: HermMatrix) -> Self {
        m.to_rows()
    }
}

/// The canonical Gram matrix of `H′`, with `l = λ`, `lb = λ̄`.
const HPRIME: [[&str; 5]; 5] = [
    ["3", "1-lb", "-l", "1", "-lb"],
    ["1-l", "3", "-1", "-l", "1"],
    ["-lb", "-1", "3", "l", "-1+l"],
    ["1", "-lb", "lb", "3", "1-lb"],
    ["-l", "1", "-1+lb", "1-l", "3"],
];

impl HermMatrix {
    pub fn new(rows: Vec<Vec<QuadInt>>) -> Result<Self, HermitianError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(HermitianError::NotSquare);
        }
        let m = HermMatrix { n, data: rows.into_iter().flatten().collect() };
        if let Some((row, col)) = m.first_non_hermitian() {
            return Err(HermitianError::NotHermitian { row, col });
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        HermMatrix::diagonal(&vec![1; n])
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let n = d.len();
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { QuadInt::int(d[i]) } else { QuadInt::ZERO }).collect()).collect();
        HermMatrix::new(rows).unwrap()
    }

    /// Rows of `;`-separated entries such as `1-lb`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, HermitianError> {
        let mut rows = Vec::new();
        for (li, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let row = body
                .split(';')
                .enumerate()
                .map(|(k, e)| {
                    QuadInt::parse(e).ok_or_else(|| HermitianError::Parse { line: li + 1, entry: k + 1, text: e.trim().to_string() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        HermMatrix::new(rows)
    }

    fn first_non_hermitian(&self) -> Option<(usize, usize)> {
        (0..self.n).flat_map(|i| (i..self.n).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != self.get(j, i).conj())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> QuadInt {
        self.data[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<QuadInt>> {
        self.data.chunks(self.n.max(1)).map(<[QuadInt]>::to_vec).take(self.n).collect()
    }

    pub fn to_cyclo(&self) -> CMat {
        CMat::from_fn(self.n, self.n, |i, j| self.get(i, j).to_cyclo())
    }

    /// First `(row, col)` where the two matrices differ, scanning row by row.
    pub fn first_mismatch(&self, other: &HermMatrix) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    /// Exact determinant by fraction-free elimination over `Z[λ]`.
    pub fn det(&self) -> Result<BigInt, HermitianError> {
        let rows: Vec<Vec<BigQuad>> =
            self.to_rows().into_iter().map(|r| r.into_iter().map(BigQuad::from).collect()).collect();
        let d = bareiss_det(&rows);
        if d.b.is_zero() {
            Ok(d.a)
        } else {
            Err(HermitianError::NonIntegerDeterminant(format!("{} + {}*l", d.a, d.b)))
        }
    }

    pub fn leading_minors(&self) -> Result<Vec<BigInt>, HermitianError> {
        (1..=self.n)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.principal(&idx).det()
            })
            .collect()
    }

    fn principal(&self, idx: &[usize]) -> HermMatrix {
        HermMatrix {
            n: idx.len(),
            data: idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).map(|(i, j)| self.get(i, j)).collect(),
        }
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> Result<bool, HermitianError> {
        Ok(self.leading_minors()?.iter().all(|m| m.is_positive()))
    }

    /// The form `H(x₁∧x₂, x₃∧x₄) = H(x₁,x₃)H(x₂,x₄) − H(x₁,x₄)H(x₂,x₃)` in the
    /// basis `e_{ij}`, `i < j`, in lexicographic order.
    pub fn induced_wedge2(&self) -> HermMatrix {
        let pairs = subsets(self.n, 2);
        let m = pairs.len();
        let mut data = Vec::with_capacity(m * m);
        for p in &pairs {
            for q in &pairs {
                let (i, j, k, l) = (p[0], p[1], q[0], q[1]);
                data.push(self.get(i, k) * self.get(j, l) - self.get(i, l) * self.get(j, k));
            }
        }
        HermMatrix { n: m, data }
    }

    /// `c_j = θ₀^j·θ^{n−j}/(j!(n−j)!)` for `j = 0…n`, from
    /// `det(T·I − M) = Σ (−1)^{n−j} c_j T^j`.
    pub fn polarization_invariants(&self) -> Result<Vec<i64>, HermitianError> {
        let p = self.to_cyclo().char_poly();
        let n = self.n;
        (0..=n)
            .map(|j| {
                let c = p.coeffs().get(j).cloned().unwrap_or_else(CycloNum::zero);
                let q: Rational = c.to_rational().ok_or(HermitianError::NonIntegerCoefficient)?;
                if !q.is_integer() {
                    return Err(HermitianError::NonIntegerCoefficient);
                }
                let v: i64 = q.to_integer().try_into().map_err(|_| HermitianError::NonIntegerCoefficient)?;
                Ok(if (n - j) % 2 == 0 { v } else { -v })
            })
            .collect()
    }
}

impl fmt::Debug for HermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for HermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join("; "))?;
        }
        Ok(())
    }
}

/// `a + bλ` with unbounded coefficients, for elimination.
#[derive(Clone, PartialEq, Debug)]
struct BigQuad {
    a: BigInt,
    b: BigInt,
}

impl From<QuadInt> for BigQuad {
    fn from(x: QuadInt) -> Self {
        BigQuad { a: x.a.into(), b: x.b.into() }
    }
}

impl BigQuad {
    fn conj(&self) -> BigQuad {
        BigQuad { a: &self.a - &self.b, b: -&self.b }
    }

    fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + BigInt::from(3) * &self.b * &self.b
    }
}

impl crate::linalg::ExactRing for BigQuad {
    fn zero() -> Self {
        BigQuad { a: BigInt::from(0), b: BigInt::from(0) }
    }
    fn one() -> Self {
        BigQuad { a: BigInt::from(1), b: BigInt::from(0) }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    // λ² = −λ − 3
    fn mul(&self, o: &Self) -> Self {
        let bb = &self.b * &o.b;
        BigQuad { a: &self.a * &o.a - BigInt::from(3) * &bb, b: &self.a * &o.b + &self.b * &o.a - bb }
    }
    fn sub(&self, o: &Self) -> Self {
        BigQuad { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn neg(&self) -> Self {
        BigQuad { a: -&self.a, b: -&self.b }
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let t = crate::linalg::ExactRing::mul(self, &d.conj());
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        (Zero::is_zero(&ra) && Zero::is_zero(&rb)).then_some(BigQuad { a: qa, b: qb })
    }
}

/// `H′` on `Z[λ]⁵`.
pub fn build_hprime() -> HermMatrix {
    let rows = HPRIME.iter().map(|r| r.iter().map(|e| QuadInt::parse(e).expect("valid literal")).collect()).collect();
    HermMatrix::new(rows).expect("H′ is Hermitian")
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use num_traits::One;

    use super::*;
    use crate::fixtures;

    fn l() -> QuadInt {
        QuadInt::LAMBDA
    }

    #[test]
    fn hprime_entries() {
        let h = build_hprime();
        assert_eq!(h.get(0, 0), QuadInt::int(3));
        assert_eq!(h.get(0, 1), QuadInt::ONE - l().conj());
        assert_eq!(h.get(0, 2), -l());
        assert!((0..5).all(|i| h.get(i, i) == QuadInt::int(3)));
        assert_eq!(h.first_mismatch(&fixtures::hprime().unwrap()), None);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let rows = vec![vec![QuadInt::int(1), l()], vec![l(), QuadInt::int(1)]];
        assert_eq!(HermMatrix::new(rows), Err(HermitianError::NotHermitian { row: 0, col: 1 }));
        let rows = vec![vec![l()]];
        assert_eq!(HermMatrix::new(rows), Err(HermitianError::NotHermitian { row: 0, col: 0 }));
        assert!(matches!(HermMatrix::parse("1; 2\nx; 1"), Err(HermitianError::Parse { line: 2, entry: 1, .. })));
    }

    #[test]
    fn determinants() {
        assert_eq!(HermMatrix::identity(5).det().unwrap(), BigInt::one());
        let h = build_hprime();
        assert_eq!(h.det().unwrap(), BigInt::one());
        // cofactor oracle over Z[λ]
        assert_eq!(cofactor_det(&h.to_rows()), QuadInt::ONE);
        assert_eq!(h.induced_wedge2().det().unwrap(), BigInt::one());
        let big = HermMatrix::diagonal(&[1 << 40, 1 << 40, 3]);
        assert_eq!(big.det().unwrap(), BigInt::from(3) << 80);
    }

    fn cofactor_det(m: &[Vec<QuadInt>]) -> QuadInt {
        if m.len() == 1 {
            return m[0][0];
        }
        let mut acc = QuadInt::ZERO;
        for (j, &x) in m[0].iter().enumerate() {
            let minor: Vec<Vec<QuadInt>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &v)| v).collect()).collect();
            let term = x * cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn positive_definiteness() {
        assert!(HermMatrix::identity(4).is_positive_definite().unwrap());
        assert!(build_hprime().is_positive_definite().unwrap());
        assert!(!HermMatrix::diagonal(&[1, -1]).is_positive_definite().unwrap());
        assert!(build_hprime().induced_wedge2().is_positive_definite().unwrap());
    }

    #[test]
    fn induced_form_matches_the_published_matrix() {
        let h = build_hprime().induced_wedge2();
        assert_eq!(h.get(0, 0), QuadInt::int(4));
        assert_eq!(h.get(0, 1), l() * QuadInt::int(2));
        let printed = fixtures::mat10().unwrap();
        assert_eq!(h.first_mismatch(&printed), None);
        assert!((0..10).all(|i| h.get(i, i).is_rational()));
        assert_eq!(HermMatrix::identity(5).induced_wedge2(), HermMatrix::identity(10));
    }

    #[test]
    fn mismatch_is_located() {
        let h = build_hprime().induced_wedge2();
        let mut rows = h.to_rows();
        rows[3][7] = rows[3][7] + QuadInt::ONE;
        rows[7][3] = rows[7][3] + QuadInt::ONE;
        assert_eq!(h.first_mismatch(&HermMatrix::new(rows).unwrap()), Some((3, 7)));
    }

    #[test]
    fn polarization_invariants() {
        let binom: Vec<i64> = (0..=10).map(|j| (0..j).fold(1i64, |acc, k| acc * (10 - k) / (k + 1))).collect();
        assert_eq!(HermMatrix::identity(10).polarization_invariants().unwrap(), binom);
        let p = build_hprime().induced_wedge2().polarization_invariants().unwrap();
        assert_eq!((p[0], p[10]), (1, 1));
        let mut d = vec![1; 10];
        d[0] = 2;
        assert_eq!(HermMatrix::diagonal(&d).polarization_invariants().unwrap()[0], 2);
    }

    #[test]
    fn serde_as_integer_pairs() {
        let h = HermMatrix::diagonal(&[1, 2]);
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(text, "[[[1,0],[0,0]],[[0,0],[2,0]]]");
        let back: HermMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, h);
        assert!(serde_json::from_str::<HermMatrix>("[[[0,1]]]").is_err());
    }

    proptest! {
        #[test]
        fn induced_determinant_of_diagonals(d in proptest::collection::vec(1i64..30, 5)) {
            let m = HermMatrix::diagonal(&d);
            let mut expected = BigInt::one();
            for i in 0..5 {
                for j in i + 1..5 {
                    expected *= d[i] * d[j];
                }
            }
            prop_assert_eq!(m.induced_wedge2().det().unwrap(), expected);
        }
    }
}
