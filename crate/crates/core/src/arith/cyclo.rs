use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, Rational};

/// Largest conductor the arithmetic will operate in.
pub const MAX_CONDUCTOR: u32 = 66;

struct CycloData {
    phi: usize,
    /// `reduce[k]` is `x^k mod Φ_n` in the power basis, for `0 <= k < n`.
    reduce: Vec<Vec<i64>>,
    /// The units of `Z/n`, i.e. the exponents of the Galois automorphisms.
    units: Vec<u32>,
}

fn tables() -> &'static [CycloData] {
    static TABLES: OnceLock<Vec<CycloData>> = OnceLock::new();
    TABLES.get_or_init(|| (0..=MAX_CONDUCTOR).map(build_data).collect())
}

fn data(n: u32) -> &'static CycloData {
    assert!(
        (1..=MAX_CONDUCTOR).contains(&n),
        "conductor {n} outside 1..={MAX_CONDUCTOR}"
    );
    &tables()[n as usize]
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn build_data(n: u32) -> CycloData {
    if n == 0 {
        return CycloData { phi: 0, reduce: Vec::new(), units: Vec::new() };
    }
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut reduce = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        reduce.push(cur.clone());
        // multiply by x and reduce the overflow coefficient with the monic Φ_n
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (i, c) in cur.iter_mut().enumerate() {
                *c -= top * phi_poly[i];
            }
        }
    }
    let units = (1..=n).filter(|k| k.gcd(&n) == 1).map(|k| k % n).collect();
    CycloData { phi, reduce, units }
}

/// Element of the cyclotomic field `Q(ζ_n)`, stored in the power basis
/// `1, ζ, …, ζ^{φ(n)-1}` as integer numerators over one positive denominator.
#[derive(Clone)]
pub struct CycloNum {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(n: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycloNum { n, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn from_rational_in(n: u32, q: &Rational) -> Self {
        let d = data(n);
        let mut num = vec![BigInt::zero(); d.phi];
        num[0] = q.numer().clone();
        CycloNum { n, num, den: q.denom().clone() }
    }

    /// `ζ_n^k`.
    pub fn zeta(n: u32, k: i64) -> Self {
        let d = data(n);
        let e = k.rem_euclid(n as i64) as usize;
        let num = d.reduce[e].iter().map(|&c| BigInt::from(c)).collect();
        CycloNum { n, num, den: BigInt::one() }
    }

    /// Builds `Σ coeffs[i] ζ^i`; the vector may be longer than φ(n).
    pub fn from_coeffs(n: u32, coeffs: &[Rational]) -> Self {
        let mut acc = CycloNum::from_rational_in(n, &<Rational as Field>::zero());
        for (i, c) in coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                acc = acc + CycloNum::zeta(n, i as i64) * CycloNum::from_rational_in(n, c);
            }
        }
        acc
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients, length φ(n).
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Numerators and the common denominator; together a canonical form.
    pub fn raw_parts(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// Re-expresses the element in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "cannot lift conductor {} to {}", self.n, m);
        let target = data(m);
        let step = (m / self.n) as usize;
        let mut num = vec![BigInt::zero(); target.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(&target.reduce[(i * step) % m as usize]) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        CycloNum { n: m, num, den: self.den.clone() }
    }

    /// The automorphism `ζ ↦ ζ^k`; `k` must be a unit mod the conductor.
    pub fn galois(&self, k: u32) -> Self {
        let n = self.n as usize;
        assert!(
            (k as usize).gcd(&n) == 1,
            "{k} is not a unit modulo {n}"
        );
        let d = data(self.n);
        let mut num = vec![BigInt::zero(); d.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(&d.reduce[(i * k as usize) % n]) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        CycloNum { n: self.n, num, den: self.den.clone() }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Product of all Galois conjugates; a rational number.
    pub fn norm(&self) -> Rational {
        let d = data(self.n);
        let mut acc = self.clone();
        for &k in d.units.iter().filter(|&&k| k != 1) {
            acc = acc * self.galois(k);
        }
        acc.to_rational().expect("field norm is rational")
    }

    fn common(a: &CycloNum, b: &CycloNum) -> u32 {
        if a.n == b.n {
            return a.n;
        }
        let m = a.n.lcm(&b.n);
        assert!(
            m <= MAX_CONDUCTOR,
            "mixed conductors {} and {} exceed the cap {}",
            a.n,
            b.n,
            MAX_CONDUCTOR
        );
        m
    }

    fn add_impl(&self, other: &CycloNum, negate: bool) -> CycloNum {
        let m = Self::common(self, other);
        let a = self.lift(m);
        let b = other.lift(m);
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        CycloNum::from_parts(m, num, &a.den * &b.den)
    }

    fn mul_impl(&self, other: &CycloNum) -> CycloNum {
        if self.n == 1 || other.n == 1 {
            let (s, v) = if self.n == 1 { (self, other) } else { (other, self) };
            let k = &s.num[0];
            let num = v.num.iter().map(|c| c * k).collect();
            return CycloNum::from_parts(v.n, num, &s.den * &v.den);
        }
        let m = Self::common(self, other);
        let a = self.lift(m);
        let b = other.lift(m);
        let d = data(m);
        let phi = d.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut num: Vec<BigInt> = conv[..phi].to_vec();
        for (k, c) in conv.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(&d.reduce[k % m as usize]) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        CycloNum::from_parts(m, num, &a.den * &b.den)
    }
}

/// `λ = ζ + ζ³ + ζ⁴ + ζ⁵ + ζ⁹` in `Q(ζ_11)`, the Gauss period `(−1 + √−11)/2`.
pub fn lambda_embed() -> CycloNum {
    [1, 3, 4, 5, 9]
        .iter()
        .map(|&k| CycloNum::zeta(11, k))
        .fold(CycloNum::from_rational_in(11, &<Rational as Field>::zero()), |a, b| a + b)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        let m = Self::common(self, other);
        let a = self.lift(m);
        let b = other.lift(m);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNum {}

impl Field for CycloNum {
    fn zero() -> Self {
        CycloNum { n: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    fn one() -> Self {
        CycloNum { n: 1, num: vec![BigInt::one()], den: BigInt::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    fn from_i64(v: i64) -> Self {
        CycloNum { n: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    fn from_rational(q: &Rational) -> Self {
        CycloNum::from_rational_in(1, q)
    }

    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero cyclotomic number");
        let d = data(self.n);
        let mut cof = CycloNum::from_rational_in(self.n, &<Rational as Field>::one());
        for &k in d.units.iter().filter(|&&k| k != 1) {
            cof = cof * self.galois(k);
        }
        let norm = (self.clone() * &cof)
            .to_rational()
            .expect("field norm is rational");
        cof * CycloNum::from_rational_in(1, &norm.recip())
    }

    fn conj(&self) -> Self {
        if self.n <= 2 {
            return self.clone();
        }
        self.galois(self.n - 1)
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Rational::new(self.num[0].clone(), self.den.clone()))
    }
}

impl Add for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: CycloNum) -> CycloNum {
        self.add_impl(&rhs, false)
    }
}

impl<'a> Add<&'a CycloNum> for CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &'a CycloNum) -> CycloNum {
        self.add_impl(rhs, false)
    }
}

impl Sub for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: CycloNum) -> CycloNum {
        self.add_impl(&rhs, true)
    }
}

impl<'a> Sub<&'a CycloNum> for CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &'a CycloNum) -> CycloNum {
        self.add_impl(rhs, true)
    }
}

impl Mul for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: CycloNum) -> CycloNum {
        self.mul_impl(&rhs)
    }
}

impl<'a> Mul<&'a CycloNum> for CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &'a CycloNum) -> CycloNum {
        self.mul_impl(rhs)
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, q) in self.coeffs().iter().enumerate() {
            if Zero::is_zero(q) {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = super::rational_to_string(&mag);
            match (i, num_traits::One::is_one(&mag)) {
                (0, _) => write!(f, "{coeff}")?,
                (_, true) => write!(f, "z{}^{}", self.n, i)?,
                (_, false) => write!(f, "{coeff}*z{}^{}", self.n, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z11(k: i64) -> CycloNum {
        CycloNum::zeta(11, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(11), vec![1; 11]);
        for n in 1..=MAX_CONDUCTOR {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn lambda_identities() {
        let l = lambda_embed();
        let three = CycloNum::from_i64(3);
        assert!(Field::is_zero(&(l.clone() * &l + &l + three.clone())));
        assert_eq!(l.clone() * l.conj(), three);
        assert_eq!(l.clone() + l.conj(), CycloNum::from_i64(-1));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z11(11), CycloNum::one());
        assert_eq!(z11(3).pow(11), CycloNum::one());
        let sum = (0..11).map(z11).fold(CycloNum::zero(), |a, b| a + b);
        assert!(Field::is_zero(&sum));
        assert_eq!(z11(4).conj(), z11(7));
    }

    #[test]
    fn lifting_and_mixed_conductors() {
        // ζ_5 = ζ_55^11 and ζ_11 = ζ_55^5
        assert_eq!(CycloNum::zeta(5, 1).lift(55), CycloNum::zeta(55, 11));
        let p = CycloNum::zeta(5, 1) * CycloNum::zeta(11, 1);
        assert_eq!(p.conductor(), 55);
        assert_eq!(p, CycloNum::zeta(55, 16));
        // ζ_6 = -ζ_3^2
        assert_eq!(CycloNum::zeta(6, 1), -CycloNum::zeta(3, 2));
    }

    #[test]
    fn inverse_and_norm() {
        let x = z11(1) + CycloNum::from_i64(2) - z11(5) * CycloNum::from_i64(3);
        let y = x.inv();
        assert_eq!(x.clone() * &y, CycloNum::one());
        let l = lambda_embed();
        // N_{Q(ζ11)/Q}(λ) = N_{Q(√-11)/Q}(λ)^5 = 3^5
        assert_eq!(l.norm(), Rational::from_i64(243));
        let w = CycloNum::zeta(55, 7) - CycloNum::from_i64(1);
        assert_eq!(w.clone() * w.inv(), CycloNum::one());
    }

    #[test]
    fn display() {
        assert_eq!(CycloNum::zero().to_string(), "0");
        let x = CycloNum::from_i64(2) - z11(3);
        assert_eq!(x.to_string(), "2 - z11^3");
    }
}
