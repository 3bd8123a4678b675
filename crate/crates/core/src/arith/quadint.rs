use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{lambda_embed, CycloNum, Field};

/// `a + bλ` in the order `Z[λ]`, where `λ² + λ + 3 = 0`.
///
/// Serializes as the two-integer array `[a, b]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct QuadInt {
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub const ZERO: QuadInt = QuadInt { a: 0, b: 0 };
    pub const ONE: QuadInt = QuadInt { a: 1, b: 0 };
    pub const LAMBDA: QuadInt = QuadInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        QuadInt { a, b }
    }

    pub const fn int(a: i64) -> Self {
        QuadInt { a, b: 0 }
    }

    /// `λ̄ = −1 − λ`, so `conj(a + bλ) = (a − b) − bλ`.
    pub fn conj(self) -> Self {
        QuadInt { a: self.a - self.b, b: -self.b }
    }

    /// `(a + bλ)(a + bλ̄) = a² − ab + 3b²`.
    pub fn norm(self) -> i64 {
        self.a * self.a - self.a * self.b + 3 * self.b * self.b
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(self) -> bool {
        self.b == 0
    }

    /// Exact quotient, if `d` divides `self` in `Z[λ]`.
    pub fn checked_div(self, d: QuadInt) -> Option<QuadInt> {
        let n = d.norm();
        if n == 0 {
            return None;
        }
        let t = self * d.conj();
        if t.a % n != 0 || t.b % n != 0 {
            return None;
        }
        Some(QuadInt { a: t.a / n, b: t.b / n })
    }

    /// Image in `Q(ζ_11)` under `λ ↦ ζ + ζ³ + ζ⁴ + ζ⁵ + ζ⁹`.
    pub fn to_cyclo(self) -> CycloNum {
        CycloNum::from_i64(self.a) + lambda_embed() * CycloNum::from_i64(self.b)
    }

    /// Parses forms like `3`, `-l`, `1-2lb`, `-2+3l`, where `l` is λ and `lb` is λ̄.
    pub fn parse(src: &str) -> Option<QuadInt> {
        let s = src.trim();
        if s.is_empty() || s.contains(char::is_whitespace) {
            return None;
        }
        let bytes = s.as_bytes();
        let mut acc = QuadInt::ZERO;
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i != 0 {
                return None;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let k: i64 = if i > start { s[start..i].parse().ok()? } else { 1 };
            let unit = if s[i..].starts_with("lb") {
                i += 2;
                QuadInt::LAMBDA.conj()
            } else if s[i..].starts_with('l') {
                i += 1;
                QuadInt::LAMBDA
            } else if i > start {
                QuadInt::ONE
            } else {
                return None;
            };
            acc = acc + unit * QuadInt::int(sign * k);
        }
        Some(acc)
    }
}

impl From<[i64; 2]> for QuadInt {
    fn from(v: [i64; 2]) -> Self {
        QuadInt { a: v[0], b: v[1] }
    }
}

impl From<QuadInt> for [i64; 2] {
    fn from(q: QuadInt) -> Self {
        [q.a, q.b]
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        QuadInt { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        QuadInt { a: self.a - o.a, b: self.b - o.b }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -self.a, b: -self.b }
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    // (a + bλ)(c + dλ) = ac − 3bd + (ad + bc − bd)λ
    fn mul(self, o: QuadInt) -> QuadInt {
        QuadInt {
            a: self.a * o.a - 3 * self.b * o.b,
            b: self.a * o.b + self.b * o.a - self.b * o.b,
        }
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "λ"),
            (0, -1) => write!(f, "-λ"),
            (0, b) => write!(f, "{b}λ"),
            (a, 1) => write!(f, "{a}+λ"),
            (a, -1) => write!(f, "{a}-λ"),
            (a, b) if b > 0 => write!(f, "{a}+{b}λ"),
            (a, b) => write!(f, "{a}{b}λ"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lambda_relations() {
        let l = QuadInt::LAMBDA;
        assert_eq!(l * l + l + QuadInt::int(3), QuadInt::ZERO);
        assert_eq!(l * l.conj(), QuadInt::int(3));
        assert_eq!(l + l.conj(), QuadInt::int(-1));
        assert_eq!(l.to_cyclo(), lambda_embed());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(QuadInt::parse("3"), Some(QuadInt::int(3)));
        assert_eq!(QuadInt::parse("1-lb"), Some(QuadInt::ONE - QuadInt::LAMBDA.conj()));
        assert_eq!(QuadInt::parse("-2+3l"), Some(QuadInt::new(-2, 3)));
        assert_eq!(QuadInt::parse("2lb"), Some(QuadInt::new(-2, -2)));
        assert_eq!(QuadInt::parse("-l"), Some(QuadInt::new(0, -1)));
        assert_eq!(QuadInt::parse("x"), None);
        assert_eq!(QuadInt::parse("1 2"), None);
    }

    #[test]
    fn serde_as_pair() {
        let q = QuadInt::new(1, -2);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1,-2]");
        assert_eq!(serde_json::from_str::<QuadInt>("[1,-2]").unwrap(), q);
    }

    #[test]
    fn division() {
        let x = QuadInt::new(2, 5);
        let y = QuadInt::new(-1, 3);
        assert_eq!((x * y).checked_div(y), Some(x));
        assert_eq!(QuadInt::int(1).checked_div(QuadInt::int(2)), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000,
                                  c in -1000i64..1000, d in -1000i64..1000) {
            let x = QuadInt::new(a, b);
            let y = QuadInt::new(c, d);
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
            prop_assert!(x.norm() >= 0);
            prop_assert_eq!(x.norm() == 0, x.is_zero());
        }
    }
}
