use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::GroebnerError;
use crate::arith::{MultiPoly, Rational};

/// Largest number of variables a [`Mono`] can carry.
pub const MAX_VARS: usize = 24;

/// A monomial, ordered by graded reverse lexicographic order with
/// `x0 > x1 > …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono {
    deg: u32,
    e: [u16; MAX_VARS],
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, e: [0; MAX_VARS] };

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::ONE;
        m.e[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Option<Mono> {
        if exps.len() > MAX_VARS {
            return None;
        }
        let mut m = Mono::ONE;
        for (i, &x) in exps.iter().enumerate() {
            m.e[i] = u16::try_from(x).ok()?;
            m.deg += x;
        }
        Some(m)
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&x| x as u32).collect()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.e[i] = m.e[i].checked_add(o.e[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self | o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.e[i] -= self.e[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut m = Mono::ONE;
        for i in 0..MAX_VARS {
            m.e[i] = self.e[i].max(o.e[i]);
            m.deg += m.e[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, o: &Mono) -> bool {
        self.e.iter().zip(&o.e).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// `Some(i)` if the monomial is `x_i^k` with `k ≥ 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.e[i] != o.e[i] {
                    return o.e[i].cmp(&self.e[i]);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.e.iter().rposition(|&x| x > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.e[..last])
    }
}

/// Arithmetic in `F_p`, `p < 2³²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp(u32);

impl Fp {
    pub fn new(p: u32) -> Result<Fp, GroebnerError> {
        if p < 2 || !(2..).take_while(|d: &u64| d * d <= p as u64).all(|d| p as u64 % d != 0) {
            return Err(GroebnerError::NotPrime(p));
        }
        Ok(Fp(p))
    }

    pub fn p(self) -> u32 {
        self.0
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64) % self.0 as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let (mut e, mut base, mut acc) = (self.0 - 2, a as u64, 1u64);
        let p = self.0 as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }

    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    pub fn from_bigint(self, x: &BigInt) -> u32 {
        x.mod_floor(&BigInt::from(self.0)).to_u32().expect("reduced")
    }

    pub fn from_rational(self, q: &Rational) -> Option<u32> {
        let d = self.from_bigint(q.denom());
        (d != 0).then(|| self.mul(self.from_bigint(q.numer()), self.inv(d)))
    }

    /// Symmetric lift into `(−p/2, p/2]`.
    pub fn lift(self, a: u32) -> i64 {
        if a as u64 * 2 > self.0 as u64 {
            a as i64 - self.0 as i64
        } else {
            a as i64
        }
    }
}

/// A polynomial over `F_p` with terms sorted by decreasing [`Mono`].
#[derive(Clone, PartialEq, Eq)]
pub struct FPoly {
    field: Fp,
    nvars: usize,
    terms: Vec<(Mono, u32)>,
}

impl FPoly {
    pub fn zero(field: Fp, nvars: usize) -> FPoly {
        FPoly { field, nvars, terms: Vec::new() }
    }

    pub fn from_terms(field: Fp, nvars: usize, terms: impl IntoIterator<Item = (Mono, u32)>) -> FPoly {
        let mut acc: BTreeMap<Mono, u32> = BTreeMap::new();
        for (m, c) in terms {
            let slot = acc.entry(m).or_insert(0);
            *slot = field.add(*slot, c % field.p());
        }
        FPoly::from_map(field, nvars, acc)
    }

    /// Wraps terms already sorted by decreasing monomial with nonzero coefficients.
    pub(crate) fn from_sorted(field: Fp, nvars: usize, terms: Vec<(Mono, u32)>) -> FPoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0) && terms.iter().all(|t| t.1 != 0));
        FPoly { field, nvars, terms }
    }

    fn from_map(field: Fp, nvars: usize, acc: BTreeMap<Mono, u32>) -> FPoly {
        let terms = acc.into_iter().rev().filter(|(_, c)| *c != 0).collect();
        FPoly { field, nvars, terms }
    }

    pub fn var(field: Fp, nvars: usize, i: usize) -> FPoly {
        FPoly { field, nvars, terms: vec![(Mono::var(i), 1)] }
    }

    pub fn constant(field: Fp, nvars: usize, c: i64) -> FPoly {
        FPoly::from_terms(field, nvars, [(Mono::ONE, field.from_i64(c))])
    }

    /// Reduction of a rational polynomial; fails when a denominator vanishes mod `p`.
    pub fn from_rational(field: Fp, f: &MultiPoly<Rational>) -> Result<FPoly, GroebnerError> {
        if f.nvars() > MAX_VARS {
            return Err(GroebnerError::TooManyVariables(f.nvars()));
        }
        let mut terms = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let c = field.from_rational(c).ok_or(GroebnerError::BadDenominator(field.p()))?;
            terms.push((Mono::from_exps(m.exps()).ok_or(GroebnerError::TooManyVariables(f.nvars()))?, c));
        }
        Ok(FPoly::from_terms(field, f.nvars(), terms))
    }

    /// Symmetric integer lift, for display.
    pub fn to_rational(&self) -> MultiPoly<Rational> {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                (crate::arith::Monomial::new(m.exps(self.nvars)), Rational::from_integer(self.field.lift(*c).into()))
            }),
        )
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Mono, u32)> {
        self.terms.first()
    }

    pub fn lm(&self) -> Mono {
        self.terms[0].0
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn monic(&self) -> FPoly {
        match self.leading() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.field.inv(c)),
        }
    }

    pub fn scale(&self, k: u32) -> FPoly {
        if k % self.field.p() == 0 {
            return FPoly::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|&(m, c)| (m, self.field.mul(c, k))).collect();
        FPoly { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul_term(&self, m: &Mono, k: u32) -> FPoly {
        if k % self.field.p() == 0 {
            return FPoly::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|&(t, c)| (t.mul(m), self.field.mul(c, k))).collect();
        FPoly { field: self.field, nvars: self.nvars, terms }
    }

    /// `self + k·m·other`, by merging.
    pub fn add_scaled(&self, other: &FPoly, m: &Mono, k: u32) -> FPoly {
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let b = other.terms.get(j).map(|&(t, c)| (t.mul(m), f.mul(c, k)));
            match (self.terms.get(i), b) {
                (Some(&a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Greater => {
                        out.push(a);
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(b);
                        j += 1;
                    }
                    Ordering::Equal => {
                        let c = f.add(a.1, b.1);
                        if c != 0 {
                            out.push((a.0, c));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out.retain(|t| t.1 != 0);
        FPoly { field: f, nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &FPoly) -> FPoly {
        self.add_scaled(other, &Mono::ONE, 1)
    }

    pub fn sub(&self, other: &FPoly) -> FPoly {
        self.add_scaled(other, &Mono::ONE, self.field.neg(1))
    }

    pub fn mul(&self, other: &FPoly) -> FPoly {
        let mut acc: BTreeMap<Mono, u32> = BTreeMap::new();
        for &(a, x) in &self.terms {
            for &(b, y) in &other.terms {
                let slot = acc.entry(a.mul(&b)).or_insert(0);
                *slot = self.field.add(*slot, self.field.mul(x, y));
            }
        }
        FPoly::from_map(self.field, self.nvars, acc)
    }

    pub fn derivative(&self, var: usize) -> FPoly {
        let f = self.field;
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|&(m, c)| {
            let k = m.exp(var);
            (Mono::var(var).quotient_of(&m), f.mul(c, k % f.p()))
        });
        FPoly::from_terms(f, self.nvars, terms)
    }

    /// Substitutes `x_i ↦ qs[i]`.
    pub fn substitute(&self, qs: &[FPoly]) -> FPoly {
        let nv = qs.first().map_or(self.nvars, |q| q.nvars);
        let mut out = FPoly::zero(self.field, nv);
        for &(m, c) in &self.terms {
            let mut t = FPoly::constant(self.field, nv, 1).scale(c);
            for (i, q) in qs.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(q);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, point: &[u32]) -> u32 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, &(m, c)| {
            let v = (0..self.nvars).fold(c, |v, i| (0..m.exp(i)).fold(v, |v, _| f.mul(v, point[i])));
            f.add(acc, v)
        })
    }
}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let c = self.field.lift(*c);
            let sign = if c < 0 { "-" } else { "+" };
            if i > 0 || c < 0 {
                write!(f, "{sign}")?;
            }
            let mut first = true;
            if c.abs() != 1 || m.degree() == 0 {
                write!(f, "{}", c.abs())?;
                first = false;
            }
            for v in 0..self.nvars {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{v}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
