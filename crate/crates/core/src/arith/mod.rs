//! Exact number systems and polynomial rings.
//!
//! Everything here is exact: rationals are arbitrary precision, cyclotomic
//! numbers are stored in the power basis modulo the cyclotomic polynomial,
//! and elements of `Z[λ]` are pairs of machine integers.

mod cyclo;
mod multipoly;
mod quadint;
mod rational;
mod unipoly;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use cyclo::{cyclotomic_polynomial, euler_phi, lambda_embed, CycloNum, MAX_CONDUCTOR};
pub use multipoly::{Monomial, MultiPoly};
pub use quadint::QuadInt;
pub use rational::{rational_from_str, rational_to_string, Rational};
pub use unipoly::{squarefree_decomposition, UniPoly};

/// A commutative field with exact arithmetic.
///
/// Binary operators are required both by value and with a borrowed right
/// operand so generic code can avoid gratuitous clones.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    /// Complex conjugation under the standard embedding; identity on `Q`.
    fn conj(&self) -> Self;

    /// The value as a rational number, if it is one.
    fn to_rational(&self) -> Option<Rational>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Self {
        self.clone() * &other.inv()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}
