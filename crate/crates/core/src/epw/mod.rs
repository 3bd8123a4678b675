//! Exterior algebra on `V₆ = ⟨e_0⟩ ⊕ V_ξ`, the Lagrangian 𝔸 and its EPW sextic.
//!
//! Trivectors use the basis `e_{ijk}`, `0 ≤ i < j < k ≤ 5`, in lexicographic
//! order; bivectors of `V_ξ` use `e_{12}, e_{13}, …, e_{45}`.

mod lines;
mod sextic;

use std::sync::OnceLock;

use thiserror::Error;

pub use lines::{
    fixed_locus, fixed_point_count, normalize_point, restrict_to_line, BinaryForm, Eigenspace,
    FixedPointCount,
};
pub use sextic::{
    affine_pencil, is_invariant_under, klein_sextic, sextic_by_bareiss, sextic_by_interpolation,
    sextic_equation,
};

use crate::arith::{Field, MultiPoly, Rational};
use crate::klein::CMat;
use crate::linalg::{subsets, Matrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EpwError {
    #[error("the zero vector is not a point")]
    ZeroVector,
    #[error("the two points are dependent")]
    DependentPoints,
    #[error("A meets ∧³V_ξ nontrivially; the chart x0 ≠ 0 is invalid")]
    NotTransverse,
    #[error("expected a 10 × 20 basis of rank 10, got {rows} × {cols} of rank {rank}")]
    BadShape { rows: usize, cols: usize, rank: usize },
    #[error("the subspace is not isotropic for the wedge pairing")]
    NotIsotropic,
    #[error("determinant routes disagree: {0}")]
    RouteMismatch(String),
    #[error("the restriction to the line vanishes identically")]
    LineInSextic,
    #[error("fixed locus meets the sextic in dimension {dim}")]
    PositiveDimensional { dim: usize },
    #[error("no equivariant isomorphism (solution space of dimension {dim})")]
    NoEquivariantMap { dim: usize },
}

/// The triples `(i, j, k)` indexing trivector coordinates.
pub fn triples() -> &'static [[usize; 3]] {
    static T: OnceLock<Vec<[usize; 3]>> = OnceLock::new();
    T.get_or_init(|| subsets(6, 3).into_iter().map(|s| [s[0], s[1], s[2]]).collect())
}

/// Position of `e_{ijk}` (any order of distinct indices) and the sign of
/// the sorting permutation.
pub fn triple_index(i: usize, j: usize, k: usize) -> Option<(usize, i8)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut sign = 1i8;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    triples().iter().position(|t| *t == v).map(|p| (p, sign))
}

/// Pairs of `1..=5` in lexicographic order: the basis of `∧²V_ξ`.
pub fn xi_pairs() -> Vec<[usize; 2]> {
    subsets(5, 2).into_iter().map(|s| [s[0] + 1, s[1] + 1]).collect()
}

/// Triples of `1..=5` in lexicographic order: the basis of `∧³V_ξ`.
pub fn xi_triples() -> Vec<[usize; 3]> {
    subsets(5, 3).into_iter().map(|s| [s[0] + 1, s[1] + 1, s[2] + 1]).collect()
}

/// Coordinates of a trivector.
pub type Trivector<F> = Vec<F>;

pub fn basis_trivector<F: Field>(i: usize, j: usize, k: usize) -> Trivector<F> {
    let (p, s) = triple_index(i, j, k).expect("distinct indices");
    let mut t = vec![F::zero(); 20];
    t[p] = F::from_i64(s as i64);
    t
}

/// Coefficient of `e_{012345}` in `t₁ ∧ t₂`.
pub fn wedge_pairing<F: Field>(t1: &[F], t2: &[F]) -> F {
    assert_eq!((t1.len(), t2.len()), (20, 20));
    let tr = triples();
    let mut acc = F::zero();
    for (p, t) in tr.iter().enumerate() {
        if t1[p].is_zero() {
            continue;
        }
        let comp: Vec<usize> = (0..6).filter(|i| !t.contains(i)).collect();
        let (q, _) = triple_index(comp[0], comp[1], comp[2]).unwrap();
        if t2[q].is_zero() {
            continue;
        }
        let perm = [t[0], t[1], t[2], comp[0], comp[1], comp[2]];
        let term = t1[p].clone() * &t2[q];
        acc = if permutation_sign(&perm) > 0 { acc + term } else { acc - term };
    }
    acc
}

fn permutation_sign(p: &[usize]) -> i8 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

/// `x ∧ t` for a vector `x ∈ V₆` and a bivector given on the basis pair `(j, k)`.
fn wedge_vector_pair<F: Field>(x: &[F], j: usize, k: usize) -> Trivector<F> {
    let mut t = vec![F::zero(); 20];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        if let Some((p, s)) = triple_index(i, j, k) {
            t[p] = if s > 0 { t[p].clone() + xi } else { t[p].clone() - xi };
        }
    }
    t
}

/// The ten assignments `v(e_{ab}) = ±e_{ijk}` defining `v: ∧²V_ξ → ∧³V_ξ`.
pub const V_ASSIGNMENTS: [([usize; 2], [usize; 3], i64); 10] = [
    ([1, 2], [2, 4, 5], 1),
    ([2, 3], [1, 3, 5], 1),
    ([3, 4], [1, 2, 4], 1),
    ([4, 5], [2, 3, 5], 1),
    ([1, 5], [1, 3, 4], -1),
    ([1, 3], [3, 4, 5], -1),
    ([2, 4], [1, 4, 5], -1),
    ([3, 5], [1, 2, 5], -1),
    ([1, 4], [1, 2, 3], 1),
    ([2, 5], [2, 3, 4], 1),
];

/// Matrix of `v` with columns indexed by [`xi_pairs`] and rows by [`xi_triples`].
pub fn build_v() -> Matrix<Rational> {
    let pairs = xi_pairs();
    let trip = xi_triples();
    let mut m = Matrix::zeros(10, 10);
    for (pair, triple, s) in V_ASSIGNMENTS {
        let c = pairs.iter().position(|p| *p == pair).unwrap();
        let r = trip.iter().position(|t| *t == triple).unwrap();
        m[(r, c)] = Rational::from_i64(s);
    }
    m
}

/// A ten-dimensional subspace of `∧³V₆`, stored by a basis of rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Lagrangian {
    basis: Matrix<Rational>,
}

impl Lagrangian {
    /// Accepts a `10 × 20` matrix of rank 10 whose rows pair to zero.
    pub fn new(basis: Matrix<Rational>) -> Result<Self, EpwError> {
        let rank = basis.rank();
        if basis.rows() != 10 || basis.cols() != 20 || rank != 10 {
            return Err(EpwError::BadShape { rows: basis.rows(), cols: basis.cols(), rank });
        }
        let l = Lagrangian { basis };
        if !l.is_isotropic() {
            return Err(EpwError::NotIsotropic);
        }
        Ok(l)
    }

    pub fn basis(&self) -> &Matrix<Rational> {
        &self.basis
    }

    /// The basis with entries mapped into another field.
    pub fn basis_in<F: Field>(&self) -> Matrix<F> {
        self.basis.map(F::from_rational)
    }

    pub fn is_isotropic(&self) -> bool {
        let rows = self.basis.to_rows();
        (0..rows.len()).all(|i| (i + 1..rows.len()).all(|j| wedge_pairing(&rows[i], &rows[j]).is_zero()))
    }

    pub fn same_subspace(&self, other: &Lagrangian) -> bool {
        self.basis.vstack(&other.basis).rank() == 10
    }

    /// Whether `F(g)` (a `20 × 20` matrix acting on column vectors) preserves the subspace.
    pub fn is_stable_under(&self, w: &CMat) -> bool {
        let b = self.basis_in::<crate::arith::CycloNum>();
        let image = w.mul(&b.transpose()).transpose();
        b.vstack(&image).rank() == 10
    }
}

/// The graph `{e_0 ∧ x + v(x)}` of a map `v: ∧²V_ξ → ∧³V_ξ`, rows ordered by [`xi_pairs`].
pub fn graph_of(v: &Matrix<Rational>) -> Result<Lagrangian, EpwError> {
    let pairs = xi_pairs();
    let trip = xi_triples();
    let mut rows = Vec::with_capacity(10);
    for (c, [a, b]) in pairs.iter().copied().enumerate() {
        let mut t = basis_trivector::<Rational>(0, a, b);
        for (r, [i, j, k]) in trip.iter().copied().enumerate() {
            if !Field::is_zero(&v[(r, c)]) {
                let (p, _) = triple_index(i, j, k).unwrap();
                t[p] = t[p].clone() + &v[(r, c)];
            }
        }
        rows.push(t);
    }
    Lagrangian::new(Matrix::from_rows(rows))
}

/// The Lagrangian 𝔸 of the Klein configuration.
pub fn build_a() -> Lagrangian {
    graph_of(&build_v()).expect("𝔸 is Lagrangian")
}

/// The sign `ε_T = −1` if `0 ∈ T`, else `1`, of the map induced on `∧³` by
/// `e_0 ↦ −e_0^∨`, `e_j ↦ e_j^∨`.
fn duality_sign(t: &[usize; 3]) -> i64 {
    if t[0] == 0 { -1 } else { 1 }
}

/// Whether `e_0 ↦ −e_0^∨, e_j ↦ e_j^∨` maps `A` onto its annihilator `A^⊥`.
pub fn self_duality_check(a: &Lagrangian) -> bool {
    let rows = a.basis.to_rows();
    let tr = triples();
    rows.iter().all(|r| {
        rows.iter().all(|s| {
            let sum = tr.iter().enumerate().fold(Rational::from_i64(0), |acc, (p, t)| {
                acc + r[p].clone() * &s[p] * Rational::from_i64(duality_sign(t))
            });
            Field::is_zero(&sum)
        })
    })
}

/// Image of the row span under the duality map, in dual coordinates.
pub fn duality_image(a: &Lagrangian) -> Matrix<Rational> {
    let tr = triples();
    Matrix::from_fn(10, 20, |i, p| a.basis[(i, p)].clone() * Rational::from_i64(duality_sign(&tr[p])))
}

/// `x ∧ ∧²V₆` as the rows `x ∧ e_{jk}`, `0 ≤ j < k ≤ 5`.
pub fn wedge_space<F: Field>(x: &[F]) -> Matrix<F> {
    let rows = subsets(6, 2).into_iter().map(|s| wedge_vector_pair(x, s[0], s[1])).collect();
    Matrix::from_rows(rows)
}

/// `ℓ(x) = dim(A ∩ (x ∧ ∧²V₆))`.
pub fn stratum<F: Field>(a: &Lagrangian, x: &[F]) -> Result<usize, EpwError> {
    assert_eq!(x.len(), 6, "points of P(V₆) have six coordinates");
    if x.iter().all(F::is_zero) {
        return Err(EpwError::ZeroVector);
    }
    let w = wedge_space(x);
    let both = a.basis_in::<F>().vstack(&w);
    Ok(10 + w.rank() - both.rank())
}

/// `dim(A ∩ ∧³V₅)` for the hyperplane `V₅ = ker(covector)`.
pub fn intersection_with_hyperplane(a: &Lagrangian, covector: &[Rational]) -> Result<usize, EpwError> {
    assert_eq!(covector.len(), 6);
    let phi = Matrix::from_rows(vec![covector.to_vec()]);
    let v5 = phi.kernel_basis();
    if v5.cols() != 5 {
        return Err(EpwError::ZeroVector);
    }
    // coordinates of u_a ∧ u_b ∧ u_c are the 3 × 3 minors of the basis
    let wedge3 = v5.compound(3).transpose();
    Ok(10 + wedge3.rank() - a.basis.vstack(&wedge3).rank())
}

/// The dimension `n = 5 − dim(A ∩ ∧³V₅)` of the associated GM variety.
pub fn gm_dimension(a: &Lagrangian, covector: &[Rational]) -> Result<usize, EpwError> {
    Ok(5 - intersection_with_hyperplane(a, covector)?)
}

/// The equivariant map `∧²V → ∧³V` for a representation given by generator
/// matrices, the first of which must be diagonal with the ten pair-products
/// of its entries distinct. Normalized so the `e_{12}` column has a leading
/// coefficient 1; fails unless the solution is unique up to scale and rational.
pub fn equivariant_v(gens: &[CMat]) -> Result<Matrix<Rational>, EpwError> {
    use crate::arith::CycloNum;
    let w2: Vec<CMat> = gens.iter().map(|g| g.compound(2)).collect();
    let w3: Vec<CMat> = gens.iter().map(|g| g.compound(3)).collect();
    // v·W2(d) = W3(d)·v for diagonal d forces v_{rc} = 0 unless eigenvalues agree
    let mut slots = Vec::new();
    for r in 0..10 {
        for c in 0..10 {
            if w3[0][(r, r)] == w2[0][(c, c)] {
                slots.push((r, c));
            }
        }
    }
    let mut eqs: Vec<Vec<CycloNum>> = Vec::new();
    for (a2, a3) in w2.iter().zip(&w3).skip(1) {
        for r in 0..10 {
            for c in 0..10 {
                // (v·A2 − A3·v)[r][c]
                let row: Vec<CycloNum> = slots
                    .iter()
                    .map(|&(i, j)| {
                        let mut e = CycloNum::zero();
                        if i == r {
                            e = e + &a2[(j, c)];
                        }
                        if j == c {
                            e = e - &a3[(r, i)];
                        }
                        e
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    if eqs.is_empty() {
        return Err(EpwError::NoEquivariantMap { dim: slots.len() });
    }
    let ker = Matrix::from_rows(eqs).kernel_basis();
    if ker.cols() != 1 {
        return Err(EpwError::NoEquivariantMap { dim: ker.cols() });
    }
    let mut v = Matrix::<CycloNum>::zeros(10, 10);
    for (t, &(i, j)) in slots.iter().enumerate() {
        v[(i, j)] = ker[(t, 0)].clone();
    }
    let pivot = (0..10).find(|&r| !v[(r, 0)].is_zero()).ok_or(EpwError::NoEquivariantMap { dim: 0 })?;
    let v = v.scale(&v[(pivot, 0)].inv());
    let mut out = Matrix::zeros(10, 10);
    for r in 0..10 {
        for c in 0..10 {
            out[(r, c)] = v[(r, c)].to_rational().ok_or(EpwError::NoEquivariantMap { dim: 1 })?;
        }
    }
    Ok(out)
}

/// The sextic over `Q` as a polynomial in `x0, …, x5`.
pub type Sextic = MultiPoly<Rational>;

#[cfg(test)]
mod tests;
