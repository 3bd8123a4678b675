use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::Field;

/// Exponent vector ordered by graded reverse lexicographic order with
/// `x0 > x1 > … > x_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse multivariate polynomial over an exact field. Zero coefficients are
/// never stored; terms are kept in grevlex order.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::term(Monomial::var(nvars, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = MultiPoly::zero(m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the grevlex-largest down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        self.map_coeffs(|c| c.clone() * k)
    }

    pub fn mul_term(&self, m: &Monomial, k: &F) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone() * k))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // a polynomial in zero variables is a bare constant
        if self.nvars == 0 && other.nvars != 0 {
            return other.scale(&self.coefficient(&Monomial::one(0)));
        }
        if other.nvars == 0 && self.nvars != 0 {
            return self.scale(&other.coefficient(&Monomial::one(0)));
        }
        assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::constant(self.nvars, F::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t * &x.pow(e);
                }
            }
            acc = acc + &t;
        }
        acc
    }

    /// Composition `p(q_0, …, q_{n-1})`; all `q_i` share one variable count.
    pub fn substitute(&self, qs: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(qs.len(), self.nvars);
        let target = qs.first().map_or(0, |q| q.nvars);
        let maxdeg: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        // powers[i][e] = q_i^e
        let powers: Vec<Vec<MultiPoly<F>>> = qs
            .iter()
            .zip(&maxdeg)
            .map(|(q, &d)| {
                let mut v = vec![MultiPoly::constant(target, F::one())];
                for e in 1..=d as usize {
                    let next = v[e - 1].mul(q);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[var] -= 1;
            out.add_term(Monomial(d), c.clone() * &F::from_i64(e as i64));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dlm, dlc) = d.leading_term()?;
        let dlc_inv = dlc.inv();
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(self.nvars);
        while let Some((lm, lc)) = rem.leading_term() {
            if !dlm.divides(lm) {
                return None;
            }
            let qm = dlm.quotient_of(lm);
            let qc = lc.clone() * &dlc_inv;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Homogenizes with a new leading variable `x0` to total degree `deg`;
    /// the result has `nvars + 1` variables.
    pub fn homogenize_front(&self, deg: u32) -> Option<Self> {
        let mut out = MultiPoly::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let d = m.degree();
            if d > deg {
                return None;
            }
            let mut e = Vec::with_capacity(self.nvars + 1);
            e.push(deg - d);
            e.extend_from_slice(&m.0);
            out.add_term(Monomial(e), c.clone());
        }
        Some(out)
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use proptest::prelude::*;

    type P = MultiPoly<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn grevlex_order() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        // x0^2 > x0 x1 > x1^2 > x0 x2 > x1 x2 > x2^2
        let mut v = vec![
            m(&[0, 0, 2]),
            m(&[1, 1, 0]),
            m(&[0, 1, 1]),
            m(&[2, 0, 0]),
            m(&[1, 0, 1]),
            m(&[0, 2, 0]),
        ];
        v.sort();
        v.reverse();
        assert_eq!(
            v,
            vec![
                m(&[2, 0, 0]),
                m(&[1, 1, 0]),
                m(&[0, 2, 0]),
                m(&[1, 0, 1]),
                m(&[0, 1, 1]),
                m(&[0, 0, 2])
            ]
        );
    }

    #[test]
    fn exact_division() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let a = x.add(&y.scale(&q(3)));
        let b = x.mul(&x).sub(&y);
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
        assert_eq!(x.div_exact(&y), None);
    }

    #[test]
    fn homogenize() {
        let x = P::var(2, 0);
        let p = x.add(&P::constant(2, q(1)));
        let h = p.homogenize_front(2).unwrap();
        assert!(h.is_homogeneous());
        assert_eq!(h.coefficient(&Monomial::new(vec![2, 0, 0])), q(1));
        assert_eq!(h.coefficient(&Monomial::new(vec![1, 1, 0])), q(1));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6), 0..6).prop_map(|ts| {
            P::from_terms(
                3,
                ts.into_iter()
                    .map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), q(k))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn substitution_is_a_homomorphism(p in arb_poly(), q0 in arb_poly(), q1 in arb_poly(),
                                          q2 in arb_poly(), x in -3i64..4, y in -3i64..4, z in -3i64..4) {
            let pt = [q(x), q(y), q(z)];
            let qs = [q0.clone(), q1.clone(), q2.clone()];
            let inner: Vec<Rational> = qs.iter().map(|qq| qq.eval(&pt)).collect();
            prop_assert_eq!(p.substitute(&qs).eval(&pt), p.eval(&inner));
        }
    }
}
