//! Exact dense linear algebra and integer Smith normal form.

mod int;
mod matrix;
mod ring;

pub use int::{IntMatrix, SmithForm};
pub use matrix::{subsets, Matrix};
pub use ring::{bareiss_det, ExactRing};
