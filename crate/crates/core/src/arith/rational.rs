use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Field;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// `"n"` for integers and `"n/d"` otherwise.
pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"` or `"n/d"`; the result is reduced.
pub fn rational_from_str(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[allow(dead_code)]
pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        let q = Rational::new(BigInt::from(-6), BigInt::from(22));
        assert_eq!(rational_to_string(&q), "-3/11");
        assert_eq!(rational_from_str("-3/11"), Some(q));
        assert_eq!(rational_from_str("12"), Some(Rational::from_i64(12)));
        assert_eq!(rational_from_str("1/0"), None);
    }
}
