//! Exact algebra for the Klein Lagrangian.
//!
//! The crate rebuilds the five-dimensional representation of `PSL(2, F_11)`,
//! the invariant Lagrangian subspace of `∧³V₆` it determines, the EPW sextic
//! of that Lagrangian, and the integral and Hermitian lattices attached to it.
//! Smoothness statements are checked with Gröbner bases over prime fields.

pub mod arith;
pub mod linalg;
pub mod klein;
pub mod epw;
pub mod polytext;
pub mod lattice;
pub mod hermitian;
pub mod groebner;
pub mod fixtures;
pub mod suite;
