use std::fmt;
use std::ops::{Index, IndexMut};

use crate::arith::{Field, UniPoly};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F> Matrix<F> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<F: Clone> Matrix<F> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diagonal(d: &[F]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { F::zero() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::<F>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + &(a.clone() * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        self.map(|a| a.clone() * k)
    }

    /// Entrywise conjugate of the transpose.
    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square());
        (0..self.rows).fold(F::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Matrix::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.bareiss_in_place().0
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        let mut m = self.clone();
        let (rank, sign) = m.bareiss_in_place();
        if rank < self.rows {
            return F::zero();
        }
        let d = m[(self.rows - 1, self.cols - 1)].clone();
        if sign { -d } else { d }
    }

    // Returns (rank, odd number of row swaps). Each step divides by the
    // previous pivot; in a field this is exact, and for integer inputs all
    // intermediates stay integral.
    fn bareiss_in_place(&mut self) -> (usize, bool) {
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = F::one();
        let mut r = 0;
        let mut swapped = false;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
                swapped = !swapped;
            }
            let pivot = self[(r, c)].clone();
            let prev_inv = prev.inv();
            for i in r + 1..rows {
                let f = self[(i, c)].clone();
                for j in c + 1..cols {
                    let v = pivot.clone() * &self[(i, j)] - &(f.clone() * &self[(r, j)]);
                    self[(i, j)] = v * &prev_inv;
                }
                self[(i, c)] = F::zero();
            }
            prev = pivot;
            r += 1;
        }
        (r, swapped)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = m[(r, c)].inv();
            for j in c..cols {
                m[(r, j)] = m[(r, j)].clone() * &inv;
            }
            for i in 0..rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - &(f.clone() * &m[(r, j)]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Matrix whose columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k[(f, t)] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, t)] = -r[(i, f)].clone();
            }
        }
        k
    }

    /// A basis of the row space, as rows in reduced echelon form.
    pub fn row_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        Matrix::from_fn(pivots.len(), self.cols, |i, j| r[(i, j)].clone())
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Solves `self · x = b` for one solution, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self[(i, j)].clone() } else { b[i].clone() }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// `det(T·I − self)` by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> UniPoly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Matrix::<F>::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k−1} + c_{n−k+1}·I
            m = self.mul(&m);
            for i in 0..n {
                m[(i, i)] = m[(i, i)].clone() + &coeffs[n - k + 1];
            }
            let t = self.mul(&m).trace();
            coeffs[n - k] = -(t * &F::from_i64(k as i64).inv());
        }
        UniPoly::new(coeffs)
    }

    /// The `k`-th compound matrix: minors indexed by `k`-subsets of rows and
    /// columns in lexicographic order.
    pub fn compound(&self, k: usize) -> Self {
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        Matrix::from_fn(rs.len(), cs.len(), |i, j| self.submatrix(&rs[i], &cs[j]).det())
    }

    /// Leading principal minors `det(self[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Vec<F> {
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.submatrix(&idx, &idx).det()
            })
            .collect()
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{CycloNum, Rational};
    use proptest::prelude::*;

    type Q = Matrix<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn basic_ranks() {
        assert_eq!(Q::identity(10).rank(), 10);
        assert_eq!(Q::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn determinants() {
        assert_eq!(Q::identity(4).det(), q(1));
        assert_eq!(Q::diagonal(&[q(2), q(3)]).det(), q(6));
        let g = Q::from_i64_rows(&[&[-2, -1], &[-1, -6]]);
        // cofactor oracle: ad − bc
        assert_eq!(g.det(), q((-2) * (-6) - (-1) * (-1)));
        assert_eq!(g.det(), q(11));
        let p = Q::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.det(), q(-1));
    }

    #[test]
    fn kernels() {
        assert_eq!(Q::identity(3).kernel_basis().cols(), 0);
        assert_eq!(Q::zeros(2, 2).kernel_basis().cols(), 2);
        let k = Q::from_i64_rows(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k[(0, 0)].clone() + &k[(1, 0)], q(0));
        assert!(!Field::is_zero(&k[(0, 0)]));
    }

    #[test]
    fn char_polys() {
        assert_eq!(Q::identity(2).char_poly(), UniPoly::from_i64(&[1, -2, 1]));
        assert_eq!(Q::diagonal(&[q(1), q(2)]).char_poly(), UniPoly::from_i64(&[2, -3, 1]));
        let companion = Q::from_i64_rows(&[&[0, -3], &[1, -1]]);
        assert_eq!(companion.char_poly(), UniPoly::from_i64(&[3, 1, 1]));
    }

    #[test]
    fn inverse_and_solve() {
        let m = Q::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Q::identity(3));
        let x = m.solve(&[q(1), q(2), q(3)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(2), q(3)]);
        assert!(Q::from_i64_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(Q::from_i64_rows(&[&[1, 2], &[2, 4]]).solve(&[q(1), q(0)]).is_none());
    }

    #[test]
    fn second_compound_of_identity() {
        assert_eq!(Q::identity(5).compound(2), Q::identity(10));
    }

    fn arb_q_matrix(r: usize, c: usize) -> impl Strategy<Value = Q> {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            let mut it = v.into_iter();
            Q::from_fn(r, c, |_, _| q(it.next().unwrap()))
        })
    }

    fn arb_cyclo_matrix(r: usize, c: usize) -> impl Strategy<Value = Matrix<CycloNum>> {
        prop::collection::vec((-2i64..3, 0i64..11), r * c).prop_map(move |v| {
            let mut it = v.into_iter();
            Matrix::from_fn(r, c, |_, _| {
                let (k, e) = it.next().unwrap();
                CycloNum::zeta(11, e) * CycloNum::from_i64(k)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn rank_nullity_rational(m in (1usize..6, 1usize..7).prop_flat_map(|(r, c)| arb_q_matrix(r, c))) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn rank_nullity_cyclotomic(m in (1usize..4, 1usize..5).prop_flat_map(|(r, c)| arb_cyclo_matrix(r, c))) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn det_is_multiplicative(a in arb_q_matrix(4, 4), b in arb_q_matrix(4, 4)) {
            prop_assert_eq!(a.mul(&b).det(), a.det() * b.det());
        }

        #[test]
        fn char_poly_constant_term_is_signed_det(a in arb_q_matrix(4, 4)) {
            prop_assert_eq!(a.char_poly().coeffs().first().cloned().unwrap_or_else(|| q(0)), a.det());
        }
    }
}
