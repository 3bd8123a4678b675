use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{rational_mod, Lattice, LatticeError};
use crate::arith::{rational_to_string, Field, Rational};
use crate::linalg::{IntMatrix, Matrix};

/// Largest group order accepted by the enumerations.
pub const FQF_CAP: u64 = 10_000;

/// A finite abelian group `⊕ Z/d_i` with a quadratic form.
///
/// The diagonal of `gram` holds `q(γ_i)` reduced into `[0, 2)` (into `[0, 1)`
/// for forms coming from odd lattices); off-diagonal entries hold the
/// bilinear form `b(γ_i, γ_j)` reduced into `[0, 1)`.
#[derive(Clone, PartialEq)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    gram: Matrix<Rational>,
    even: bool,
}

fn q_mod(even: bool) -> Rational {
    Rational::from_i64(if even { 2 } else { 1 })
}

impl FiniteQuadraticForm {
    /// Builds a form from generator orders and a rational Gram matrix; trivial
    /// generators are dropped and values reduced.
    pub fn new(orders: Vec<u64>, gram: Matrix<Rational>, even: bool) -> Self {
        assert_eq!(orders.len(), gram.rows());
        let keep: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] > 1).collect();
        let g = gram.submatrix(&keep, &keep);
        let qm = q_mod(even);
        let one = Rational::from_i64(1);
        let gram = Matrix::from_fn(keep.len(), keep.len(), |i, j| {
            rational_mod(&g[(i, j)], if i == j { &qm } else { &one })
        });
        FiniteQuadraticForm { orders: keep.iter().map(|&i| orders[i]).collect(), gram, even }
    }

    /// `⊕ (Z/d_i, q_i)` with orthogonal generators.
    pub fn diagonal(parts: &[(u64, Rational)]) -> Self {
        let orders = parts.iter().map(|p| p.0).collect();
        let d: Vec<Rational> = parts.iter().map(|p| p.1.clone()).collect();
        FiniteQuadraticForm::new(orders, Matrix::diagonal(&d), true)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    /// Group order.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    fn check_cap(&self) -> Result<(), LatticeError> {
        let mut total: u64 = 1;
        for &d in &self.orders {
            total = total.saturating_mul(d);
        }
        if total > FQF_CAP {
            return Err(LatticeError::TooLarge { order: total.to_string(), cap: FQF_CAP });
        }
        Ok(())
    }

    /// All elements as coordinate vectors, in mixed-radix order.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>, LatticeError> {
        self.check_cap()?;
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out.into_iter().flat_map(|v| (0..d).map(move |k| [v.clone(), vec![k]].concat())).collect();
        }
        Ok(out)
    }

    /// `q(Σ x_i γ_i)` in `[0, 2)` (or `[0, 1)`).
    pub fn q(&self, x: &[u64]) -> Rational {
        let n = self.orders.len();
        let mut acc = Rational::zero();
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let xi = Rational::from_i64(x[i] as i64);
            acc += &xi * &xi * &self.gram[(i, i)];
            for j in i + 1..n {
                if x[j] != 0 {
                    acc += Rational::from_i64(2 * x[j] as i64) * &xi * &self.gram[(i, j)];
                }
            }
        }
        rational_mod(&acc, &q_mod(self.even))
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b(&self, x: &[u64], y: &[u64]) -> Rational {
        let n = self.orders.len();
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                if x[i] != 0 && y[j] != 0 {
                    acc += Rational::from_i64((x[i] * y[j]) as i64) * &self.gram[(i, j)];
                }
            }
        }
        rational_mod(&acc, &Rational::one())
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect()
    }

    fn scale(&self, x: &[u64], k: u64) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, d)| (a * (k % d)) % d).collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1, |acc, (&a, &d)| acc.lcm(&(d / d.gcd(&a))))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.orders.len();
        let m = other.orders.len();
        let gram = Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
            (true, true) => self.gram[(i, j)].clone(),
            (false, false) => other.gram[(i - n, j - n)].clone(),
            _ => Rational::zero(),
        });
        FiniteQuadraticForm::new([self.orders.clone(), other.orders.clone()].concat(), gram, self.even && other.even)
    }

    /// The subgroup `{x : n·x = 0}` with the restricted form.
    pub fn torsion(&self, n: u64) -> Self {
        let mult: Vec<u64> = self.orders.iter().map(|&d| d / d.gcd(&n)).collect();
        let orders: Vec<u64> = self.orders.iter().map(|&d| d.gcd(&n)).collect();
        let gram = Matrix::from_fn(orders.len(), orders.len(), |i, j| {
            Rational::from_i64((mult[i] * mult[j]) as i64) * &self.gram[(i, j)]
        });
        FiniteQuadraticForm::new(orders, gram, self.even)
    }

    /// Nonzero `x` with `q(x) = 0`.
    pub fn isotropic_elements(&self) -> Result<Vec<Vec<u64>>, LatticeError> {
        Ok(self.elements()?.into_iter().filter(|x| x.iter().any(|&a| a > 0) && self.q(x).is_zero()).collect())
    }

    /// Number of injective homomorphisms `self → other` preserving `q`,
    /// found by searching images of the generators. Stops after `limit` hits.
    pub fn count_isometric_embeddings(&self, other: &Self, limit: usize) -> Result<usize, LatticeError> {
        self.check_cap()?;
        other.check_cap()?;
        if self.even != other.even {
            return Ok(0);
        }
        let targets = other.elements()?;
        let sources = self.elements()?;
        let mut images: Vec<Vec<u64>> = Vec::new();
        let mut count = 0;
        self.search(other, &targets, &sources, &mut images, &mut count, limit);
        Ok(count)
    }

    fn search(
        &self,
        other: &Self,
        targets: &[Vec<u64>],
        sources: &[Vec<u64>],
        images: &mut Vec<Vec<u64>>,
        count: &mut usize,
        limit: usize,
    ) {
        if *count >= limit {
            return;
        }
        let i = images.len();
        if i == self.orders.len() {
            if self.is_injective(other, images, sources) {
                *count += 1;
            }
            return;
        }
        let d = self.orders[i];
        let gi: Vec<u64> = (0..self.orders.len()).map(|k| (k == i) as u64).collect();
        let qi = self.q(&gi);
        for y in targets {
            if other.scale(y, d).iter().any(|&a| a != 0) || other.q(y) != qi {
                continue;
            }
            let ok = (0..i).all(|j| {
                let gj: Vec<u64> = (0..self.orders.len()).map(|k| (k == j) as u64).collect();
                other.b(&images[j], y) == self.b(&gj, &gi)
            });
            if ok {
                images.push(y.clone());
                self.search(other, targets, sources, images, count, limit);
                images.pop();
            }
        }
    }

    fn is_injective(&self, other: &Self, images: &[Vec<u64>], sources: &[Vec<u64>]) -> bool {
        sources.iter().all(|x| {
            if x.iter().all(|&a| a == 0) {
                return true;
            }
            let zero = vec![0u64; other.orders.len()];
            let image = x.iter().zip(images).fold(zero, |acc, (&k, y)| other.add(&acc, &other.scale(y, k)));
            image.iter().any(|&a| a != 0)
        })
    }

    /// Whether the forms are isometric.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool, LatticeError> {
        if self.order() != other.order() {
            self.check_cap()?;
            other.check_cap()?;
            return Ok(false);
        }
        Ok(self.count_isometric_embeddings(other, 1)? > 0)
    }

    /// Number of isometries between forms of equal order.
    pub fn isometry_count(&self, other: &Self) -> Result<usize, LatticeError> {
        if self.order() != other.order() {
            return Ok(0);
        }
        self.count_isometric_embeddings(other, usize::MAX)
    }

    /// Invariant factors and generator values as strings, for reports.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.orders.len();
        serde_json::json!({
            "orders": self.orders.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "q": (0..n).map(|i| rational_to_string(&self.gram[(i, i)])).collect::<Vec<_>>(),
            "b": (0..n).map(|i| (0..n).map(|j| rational_to_string(&self.gram[(i, j)])).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "even": self.even,
        })
    }
}

impl fmt::Debug for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FQF(")?;
        for (i, d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}[{}]", rational_to_string(&self.gram[(i, i)]))?;
        }
        write!(f, ")")
    }
}

pub(super) fn disc_group(l: &Lattice) -> Result<FiniteQuadraticForm, LatticeError> {
    let snf = l.gram().smith_normal_form();
    let n = l.rank();
    let mut orders = Vec::with_capacity(n);
    for d in &snf.diag {
        let d = d.magnitude().to_u64().filter(|&d| d > 0).ok_or_else(|| LatticeError::TooLarge {
            order: d.to_string(),
            cap: u64::MAX,
        })?;
        orders.push(d);
    }
    // the generators are the columns u_i of left⁻¹, paired through G⁻¹
    let left_inv = snf.left.to_rational().inverse().expect("unimodular");
    let u = IntMatrix::from_fn(n, n, |i, j| left_inv[(i, j)].to_integer());
    debug_assert!(u.to_rational() == left_inv);
    let ginv = l.gram().to_rational().inverse().ok_or(LatticeError::Degenerate)?;
    let gram = u.to_rational().transpose().mul(&ginv).mul(&u.to_rational());
    Ok(FiniteQuadraticForm::new(orders, gram, l.is_even()))
}
