//! Integral quadratic lattices and their discriminant forms.

mod enumerate;
mod fqf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use enumerate::ShortVector;
pub use fqf::{FiniteQuadraticForm, FQF_CAP};

use crate::arith::{Field, Rational};
use crate::linalg::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("lattice is indefinite")]
    Indefinite,
    #[error("group of order {order} exceeds the cap {cap}")]
    TooLarge { order: String, cap: u64 },
    #[error("bad lattice spec at byte {pos}: {msg}")]
    Spec { pos: usize, msg: String },
    #[error("vector has {got} coordinates, lattice has rank {rank}")]
    Dimension { got: usize, rank: usize },
}

/// A nondegenerate integral lattice given by its Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
}

/// Cartan matrix of `E8`, nodes `1-3-4-5-6-7-8` in a chain and `2` attached to `4`.
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if gram.rows() != gram.cols() || !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(LatticeError::NotSymmetric);
        }
        Lattice::new(IntMatrix::from_i64_rows(rows))
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic() -> Self {
        Lattice::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    /// `E8(k)`: the positive definite `E8` root lattice scaled by `k`.
    pub fn e8(k: i64) -> Self {
        assert!(k != 0);
        let mut g = IntMatrix::diagonal(&[2 * k; 8]);
        for (i, j) in E8_EDGES {
            g[(i, j)] = BigInt::from(-k);
            g[(j, i)] = BigInt::from(-k);
        }
        Lattice::new(g).unwrap()
    }

    /// The rank-one lattice `(m)`.
    pub fn rank1(m: i64) -> Result<Self, LatticeError> {
        Lattice::from_rows(&[vec![m]])
    }

    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { gram: self.gram.direct_sum(&other.gram) }
    }

    /// Direct sum of a nonempty list.
    pub fn sum(parts: &[Lattice]) -> Lattice {
        let (first, rest) = parts.split_first().expect("at least one summand");
        rest.iter().fold(first.clone(), |acc, l| acc.direct_sum(l))
    }

    /// Parses sums such as `U+U+E8(-1)+(-2)+[[2,1],[1,6]]`; a summand may be
    /// followed by `^n` for `n` copies.
    pub fn parse_spec(spec: &str) -> Result<Lattice, LatticeError> {
        let err = |pos: usize, msg: &str| LatticeError::Spec { pos, msg: msg.to_string() };
        let mut parts = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let bytes = spec.as_bytes();
        for i in 0..=bytes.len() {
            let c = bytes.get(i).copied();
            match c {
                Some(b'(') | Some(b'[') => depth += 1,
                Some(b')') | Some(b']') => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(err(i, "unbalanced bracket"));
                    }
                }
                Some(b'+') if depth == 0 => {
                    parts.push((start, &spec[start..i]));
                    start = i + 1;
                }
                None => {
                    if depth != 0 {
                        return Err(err(i, "unbalanced bracket"));
                    }
                    parts.push((start, &spec[start..i]));
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        for (pos, raw) in parts {
            let text = raw.trim();
            let lead = pos + raw.len() - raw.trim_start().len();
            if text.is_empty() {
                return Err(err(lead, "empty summand"));
            }
            let (body, copies) = match text.rsplit_once('^') {
                Some((b, n)) if !b.ends_with(']') || b.starts_with('[') => {
                    let n: usize = n.trim().parse().map_err(|_| err(lead, "bad repetition count"))?;
                    (b.trim(), n)
                }
                _ => (text, 1),
            };
            let piece = Lattice::parse_summand(body).ok_or_else(|| err(lead, &format!("unknown summand `{body}`")))??;
            for _ in 0..copies {
                out.push(piece.clone());
            }
        }
        Ok(Lattice::sum(&out))
    }

    fn parse_summand(s: &str) -> Option<Result<Lattice, LatticeError>> {
        if s == "U" {
            return Some(Ok(Lattice::hyperbolic()));
        }
        if s == "E8" {
            return Some(Ok(Lattice::e8(1)));
        }
        if let Some(arg) = s.strip_prefix("E8(").and_then(|r| r.strip_suffix(')')) {
            let k: i64 = arg.trim().parse().ok()?;
            return (k != 0).then(|| Ok(Lattice::e8(k)));
        }
        if let Some(arg) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let m: i64 = arg.trim().parse().ok()?;
            return Some(Lattice::rank1(m));
        }
        if s.starts_with('[') {
            let rows: Vec<Vec<i64>> = serde_json::from_str(s).ok()?;
            return Some(Lattice::from_rows(&rows));
        }
        None
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    fn check_dim(&self, v: &[i64]) -> Result<(), LatticeError> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(LatticeError::Dimension { got: v.len(), rank: self.rank() })
        }
    }

    pub fn inner(&self, v: &[i64], w: &[i64]) -> Result<BigInt, LatticeError> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        let n = self.rank();
        let mut acc = BigInt::zero();
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            for j in 0..n {
                if w[j] != 0 {
                    acc += &self.gram[(i, j)] * v[i] * w[j];
                }
            }
        }
        Ok(acc)
    }

    pub fn norm(&self, v: &[i64]) -> Result<BigInt, LatticeError> {
        self.inner(v, v)
    }

    /// `(n₊, n₋)`, from sign changes of the characteristic polynomial; all of
    /// its roots are real, so Descartes' rule is exact.
    pub fn signature(&self) -> (usize, usize) {
        let p = self.gram.to_rational().char_poly();
        let coeffs = p.coeffs();
        let changes = |flip: bool| {
            let signs: Vec<bool> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !Field::is_zero(*c))
                .map(|(i, c)| c.is_positive() != (flip && i % 2 == 1))
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        (changes(false), changes(true))
    }

    /// `1` for positive definite, `-1` for negative definite, `0` otherwise.
    pub fn definiteness(&self) -> i8 {
        match self.signature() {
            (p, 0) if p == self.rank() => 1,
            (0, n) if n == self.rank() => -1,
            _ => 0,
        }
    }

    /// The sublattice orthogonal to the given vectors, with a basis from the
    /// Smith form of `V·G`.
    pub fn orthogonal_complement(&self, vectors: &[Vec<i64>]) -> Result<(Lattice, IntMatrix), LatticeError> {
        for v in vectors {
            self.check_dim(v)?;
        }
        let n = self.rank();
        let v = IntMatrix::from_i64_rows(vectors);
        let m = if vectors.is_empty() { IntMatrix::zeros(0, n) } else { v.mul(&self.gram) };
        let snf = m.smith_normal_form();
        let r = snf.diag.iter().filter(|d| !d.is_zero()).count();
        let basis = IntMatrix::from_fn(n, n - r, |i, j| snf.right[(i, r + j)].clone());
        let gram = basis.transpose().mul(&self.gram).mul(&basis);
        Ok((Lattice::new(gram)?, basis))
    }

    /// `Disc(L) = L^∨/L` with its discriminant form.
    pub fn disc_group(&self) -> Result<FiniteQuadraticForm, LatticeError> {
        fqf::disc_group(self)
    }

    #[cfg(test)]
    pub(crate) fn gram_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rank()).map(|i| self.gram.row(i).iter().map(num_traits::ToPrimitive::to_i64).collect()).collect()
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({:?})", self.gram)
    }
}

pub(crate) fn rational_mod(r: &Rational, m: &Rational) -> Rational {
    r - m * (r / m).floor()
}
