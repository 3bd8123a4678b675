use std::fmt;

use super::Field;

/// Dense univariate polynomial, coefficients from the constant term up,
/// with no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        UniPoly::new(vec![F::zero(), F::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &F) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.clone() * k).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.clone() + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::from_i64(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(UniPoly::constant(F::one()), |acc, _| acc.mul(self))
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lc = d.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![F::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = rem[i + dd].clone() * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - &(c.clone() * dj);
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Squarefree decomposition `p = c · Π fᵢ^i` with the `fᵢ` monic, squarefree
/// and pairwise coprime; only factors of positive degree are returned.
///
/// Iterated gcd with the derivative (Yun's variant), valid in characteristic 0.
/// Returns `None` for the zero polynomial.
pub fn squarefree_decomposition<F: Field>(p: &UniPoly<F>) -> Option<Vec<(UniPoly<F>, u32)>> {
    if p.is_zero() {
        return None;
    }
    let mut out = Vec::new();
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let mut b = p.div_rem(&g).0;
    let mut d = dp.div_rem(&g).0.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        d = d.div_rem(&a).0.sub(&b.derivative());
        i += 1;
    }
    Some(out)
}

impl<F: Field + fmt::Display> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    type P = UniPoly<Rational>;

    fn product(parts: &[(P, u32)]) -> P {
        parts
            .iter()
            .fold(P::constant(Rational::from_i64(1)), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    #[test]
    fn square_of_u() {
        let p = P::from_i64(&[0, 0, 1]);
        assert_eq!(squarefree_decomposition(&p).unwrap(), vec![(P::x(), 2)]);
    }

    #[test]
    fn coprime_product_is_its_own_squarefree_part() {
        let p = P::from_i64(&[-1, 0, 1]);
        assert_eq!(squarefree_decomposition(&p).unwrap(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn order_five_line_polynomial() {
        // u⁶ + 10u³ − 12u + 5
        let p = P::from_i64(&[5, -12, 0, 10, 0, 0, 1]);
        // Euclid oracle: gcd(p, p') by hand-rolled remainder sequence
        let mut a = p.clone();
        let mut b = p.derivative();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        assert_eq!(a.monic(), P::from_i64(&[-1, 1, 1]));
        let parts = squarefree_decomposition(&p).unwrap();
        let sqfree_deg: usize = parts.iter().map(|(f, _)| f.degree().unwrap()).sum();
        assert_eq!(sqfree_deg, 4);
        assert_eq!(product(&parts), p);
        assert!(parts.contains(&(P::from_i64(&[-1, 1, 1]), 2)));
        assert!(parts.contains(&(P::from_i64(&[5, -2, 1]), 1)));
    }

    #[test]
    fn zero_rejected() {
        assert!(squarefree_decomposition(&P::zero()).is_none());
    }

    #[test]
    fn mixed_multiplicities() {
        let f1 = P::from_i64(&[1, 1]);
        let f2 = P::from_i64(&[-2, 0, 1]);
        let f3 = P::from_i64(&[3, 1]);
        let p = f1.mul(&f2.pow(2)).mul(&f3.pow(3)).scale(&Rational::from_i64(7));
        let parts = squarefree_decomposition(&p).unwrap();
        assert_eq!(parts, vec![(f1, 1), (f2, 2), (f3, 3)]);
    }
}
