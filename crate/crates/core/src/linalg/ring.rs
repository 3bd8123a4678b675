use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{Field, MultiPoly, QuadInt};

/// Commutative integral domain with exact division, enough for
/// fraction-free elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / d` when `d` divides `self`.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
}

impl ExactRing for QuadInt {
    fn zero() -> Self {
        QuadInt::ZERO
    }
    fn one() -> Self {
        QuadInt::ONE
    }
    fn is_zero(&self) -> bool {
        QuadInt::is_zero(*self)
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn sub(&self, other: &Self) -> Self {
        *self - *other
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
}

/// Polynomials in a fixed number of variables; `zero`/`one` are only used
/// where the variable count is irrelevant, so they carry none.
impl<F: Field> ExactRing for MultiPoly<F> {
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn one() -> Self {
        MultiPoly::constant(0, F::one())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, d)
    }
}

/// Bareiss determinant of a square matrix over an exact ring.
///
/// Panics if an intermediate division is not exact, which cannot happen
/// over an integral domain.
pub fn bareiss_det<R: ExactRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut a: Vec<Vec<R>> = m.to_vec();
    let mut sign = false;
    let mut prev: Option<R> = None;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return R::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = match &prev {
                    None => v,
                    Some(d) => v.div_exact(d).expect("inexact Bareiss division"),
                };
            }
            a[i][k] = R::zero();
        }
        prev = Some(a[k][k].clone());
    }
    let d = a[n - 1][n - 1].clone();
    if sign { d.neg() } else { d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn cofactor<R: ExactRing>(m: &[Vec<R>]) -> R {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = R::zero();
        for j in 0..n {
            let minor: Vec<Vec<R>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let t = m[0][j].mul(&cofactor(&minor));
            acc = if j % 2 == 0 { acc.sub(&t.neg()) } else { acc.sub(&t) };
        }
        acc
    }

    #[test]
    fn integer_matches_cofactor() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 3, 0], [1, 4, 0, -2], [0, 5, 1, 1], [3, 0, -1, 2]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(bareiss_det(&m), cofactor(&m));
    }

    #[test]
    fn quadint_matches_cofactor() {
        let l = QuadInt::LAMBDA;
        let m = vec![
            vec![QuadInt::int(3), QuadInt::ONE - l.conj(), -l],
            vec![QuadInt::ONE - l, QuadInt::int(3), QuadInt::int(-1)],
            vec![-l.conj(), QuadInt::int(-1), QuadInt::int(3)],
        ];
        assert_eq!(bareiss_det(&m), cofactor(&m));
    }

    #[test]
    fn polynomial_determinant() {
        type P = MultiPoly<Rational>;
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let one = P::constant(2, Rational::from_i64(1));
        let m = vec![vec![x.clone(), y.clone()], vec![one.clone(), x.clone()]];
        assert_eq!(bareiss_det(&m), x.mul(&x).sub(&y));
        let m3 = vec![
            vec![x.clone(), one.clone(), y.clone()],
            vec![one.clone(), y.clone(), x.clone()],
            vec![y.clone(), x.clone(), one.clone()],
        ];
        assert_eq!(bareiss_det(&m3), cofactor(&m3));
    }
}
