use std::collections::HashMap;
use std::sync::OnceLock;

use super::{build_a, triple_index, xi_pairs, xi_triples, EpwError, Lagrangian, Sextic};
use crate::arith::{CycloNum, Field, Monomial, MultiPoly, Rational, UniPoly};
use crate::klein::CMat;
use crate::linalg::{bareiss_det, Matrix};

/// The affine matrix `M(x) = P_0 + Σ x_i M_i` on the chart `x_0 = 1`: column
/// `e_{jk}` is the projection of `x ∧ e_{jk}` to `∧³V_ξ` along `A`.
pub fn affine_pencil(a: &Lagrangian) -> Result<(Matrix<Rational>, Vec<Matrix<Rational>>), EpwError> {
    let b = a.basis();
    let w: Vec<usize> = (0..10).collect();
    let wp: Vec<usize> = (10..20).collect();
    let aw = b.submatrix(&w, &w);
    let awp = b.submatrix(&w, &wp);
    let inv = aw.inverse().ok_or(EpwError::NotTransverse)?;
    let p0 = inv.mul(&awp).transpose().scale(&Rational::from_i64(-1));
    let pairs = xi_pairs();
    let trip = xi_triples();
    let ms = (1..=5)
        .map(|i| {
            Matrix::from_fn(10, 10, |r, c| {
                let [j, k] = pairs[c];
                match triple_index(i, j, k) {
                    Some((p, s)) if p >= 10 && trip[p - 10] == trip[r] => Rational::from_i64(s as i64),
                    _ => Rational::from_i64(0),
                }
            })
        })
        .collect();
    Ok((p0, ms))
}

fn pencil_at(p0: &Matrix<Rational>, ms: &[Matrix<Rational>], x: &[Rational]) -> Matrix<Rational> {
    ms.iter().zip(x).fold(p0.clone(), |acc, (m, xi)| acc.add(&m.scale(xi)))
}

/// Affine determinant `det M(x)` in `x_1, …, x_5` by fraction-free elimination
/// over the polynomial ring.
pub fn sextic_by_bareiss(a: &Lagrangian) -> Result<MultiPoly<Rational>, EpwError> {
    let (p0, ms) = affine_pencil(a)?;
    let rows: Vec<Vec<MultiPoly<Rational>>> = (0..10)
        .map(|r| {
            (0..10)
                .map(|c| {
                    let mut e = MultiPoly::constant(5, p0[(r, c)].clone());
                    for (i, m) in ms.iter().enumerate() {
                        if !Field::is_zero(&m[(r, c)]) {
                            e = e.add(&MultiPoly::var(5, i).scale(&m[(r, c)]));
                        }
                    }
                    e
                })
                .collect()
        })
        .collect();
    let mut d = bareiss_det(&rows);
    if d.nvars() != 5 {
        d = MultiPoly::zero(5).add(&d);
    }
    Ok(d)
}

/// Lattice points of `{p ∈ N^n : |p| ≤ d}`.
fn simplex_points(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in simplex_points(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `C(x, k)` as a polynomial in `x`.
fn binomial_poly(k: u32) -> UniPoly<Rational> {
    let mut p = UniPoly::constant(Rational::from_i64(1));
    for i in 0..k {
        p = p.mul(&UniPoly::new(vec![Rational::from_i64(-(i as i64)), Rational::from_i64(1)]));
    }
    let fact: i64 = (1..=k as i64).product();
    p.scale(&Rational::from_i64(fact).inv())
}

/// Affine determinant recovered from its values on the 462 points of
/// `{p ∈ N⁵ : |p| ≤ 6}` through the binomial basis `Π C(x_i, k_i)`.
/// Extra points of degree 7 confirm the degree bound.
pub fn sextic_by_interpolation(a: &Lagrangian) -> Result<MultiPoly<Rational>, EpwError> {
    let (p0, ms) = affine_pencil(a)?;
    let pts = simplex_points(5, 6);
    let q = |p: &[u32]| -> Vec<Rational> { p.iter().map(|&v| Rational::from_i64(v as i64)).collect() };
    let mut vals: HashMap<Vec<u32>, Rational> = pts.iter().map(|p| (p.clone(), pencil_at(&p0, &ms, &q(p)).det())).collect();
    // forward differences along each axis turn values into binomial coefficients
    for axis in 0..5 {
        let mut next = HashMap::with_capacity(vals.len());
        for p in &pts {
            let mut acc = Rational::from_i64(0);
            let mut binom = 1i64;
            let n = p[axis] as i64;
            for t in 0..=n {
                let mut pt = p.clone();
                pt[axis] = (n - t) as u32;
                let term = vals[&pt].clone() * Rational::from_i64(binom);
                acc = if t % 2 == 0 { acc + term } else { acc - term };
                binom = binom * (n - t) / (t + 1);
            }
            next.insert(p.clone(), acc);
        }
        vals = next;
    }
    let binoms: Vec<MultiPoly<Rational>> = (0..=6u32)
        .flat_map(|k| {
            (0..5).map(move |i| (k, i))
        })
        .map(|(k, i)| {
            let u = binomial_poly(k);
            let mut out = MultiPoly::zero(5);
            for (e, c) in u.coeffs().iter().enumerate() {
                let mut m = vec![0u32; 5];
                m[i] = e as u32;
                out.add_term(Monomial::new(m), c.clone());
            }
            out
        })
        .collect();
    let mut poly = MultiPoly::zero(5);
    for p in &pts {
        let c = &vals[p];
        if Field::is_zero(c) {
            continue;
        }
        let mut t = MultiPoly::constant(5, c.clone());
        for (i, &k) in p.iter().enumerate() {
            if k > 0 {
                t = t.mul(&binoms[k as usize * 5 + i]);
            }
        }
        poly = poly.add(&t);
    }
    for check in [[7u32, 0, 0, 0, 0], [0, 0, 3, 4, 0], [1, 2, 1, 2, 1], [0, 1, 1, 0, 5]] {
        let x = q(&check);
        if poly.eval(&x) != pencil_at(&p0, &ms, &x).det() {
            return Err(EpwError::RouteMismatch("determinant has degree above 6".into()));
        }
    }
    Ok(poly)
}

/// Equation of `Y_A ⊂ P(V₆)` in `x0, …, x5`, computed by both determinant
/// routes and normalized so the `x0⁶` coefficient is 1 (or, if `[e_0] ∈ Y_A`,
/// so the leading coefficient is 1).
pub fn sextic_equation(a: &Lagrangian) -> Result<Sextic, EpwError> {
    let (by_elim, by_interp) = rayon::join(|| sextic_by_bareiss(a), || sextic_by_interpolation(a));
    let (by_elim, by_interp) = (by_elim?, by_interp?);
    if by_elim != by_interp {
        return Err(EpwError::RouteMismatch(format!(
            "{} terms by elimination, {} by interpolation",
            by_elim.len(),
            by_interp.len()
        )));
    }
    let f = by_elim
        .homogenize_front(6)
        .ok_or_else(|| EpwError::RouteMismatch("degree above 6".into()))?;
    let lead = match f.coefficient(&Monomial::new(vec![6, 0, 0, 0, 0, 0])) {
        c if !Field::is_zero(&c) => c,
        _ => match f.leading_term() {
            Some((_, c)) => c.clone(),
            None => return Ok(f),
        },
    };
    Ok(f.scale(&lead.inv()))
}

/// The Klein sextic `Y_𝔸`, computed once.
pub fn klein_sextic() -> &'static Sextic {
    static F: OnceLock<Sextic> = OnceLock::new();
    F.get_or_init(|| sextic_equation(&build_a()).expect("𝔸 is transverse to ∧³V_ξ"))
}

/// Whether `f(g·x) = f(x)` for a homogeneous `f` of degree `d`, checked on
/// the points of `{p ∈ N^n : |p| = d}`, which determine forms of degree `d`.
pub fn is_invariant_under(f: &Sextic, g: &CMat) -> bool {
    let n = f.nvars();
    let d = f.total_degree().unwrap_or(0);
    let fc = f.map_coeffs(CycloNum::from_rational);
    simplex_points(n, d).into_iter().filter(|p| p.iter().sum::<u32>() == d).all(|p| {
        let x: Vec<CycloNum> = p.iter().map(|&v| CycloNum::from_i64(v as i64)).collect();
        fc.eval(&g.mul_vec(&x)) == fc.eval(&x)
    })
}
