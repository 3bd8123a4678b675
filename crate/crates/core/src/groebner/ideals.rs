use std::collections::BTreeMap;

use super::GroebnerError;
use crate::arith::{Field, Monomial, MultiPoly, Rational};
use crate::epw::klein_sextic;
use crate::linalg::{subsets, Matrix};
use crate::polytext::{default_names, parse_polynomials};

type Poly = MultiPoly<Rational>;

/// Named variables and polynomial generators.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealText {
    pub names: Vec<String>,
    pub polys: Vec<Poly>,
}

/// Reads an ideal file: a `vars:` line naming the variables, then
/// `;`-separated polynomials. `#` starts a comment.
pub fn parse_ideal(src: &str) -> Result<IdealText, GroebnerError> {
    let mut names = None;
    let mut body = String::with_capacity(src.len());
    for line in src.lines() {
        let code = line.split('#').next().unwrap_or("");
        match code.trim().strip_prefix("vars:") {
            Some(rest) if names.is_none() => {
                names = Some(rest.split_whitespace().map(str::to_string).collect::<Vec<_>>());
                body.push('\n');
            }
            Some(_) => return Err(GroebnerError::Format("repeated `vars:` line".into())),
            None => {
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let names = names.ok_or_else(|| GroebnerError::Format("missing `vars:` line".into()))?;
    if names.is_empty() {
        return Err(GroebnerError::Format("no variables declared".into()));
    }
    let polys = parse_polynomials(&body, &names)?;
    if polys.is_empty() {
        return Err(GroebnerError::Format("no generators".into()));
    }
    Ok(IdealText { names, polys })
}

fn var(n: usize, i: usize) -> Poly {
    MultiPoly::var(n, i)
}

fn int(x: i64) -> Rational {
    Rational::from_i64(x)
}

/// Sorted `set ∪ {j}` with the sign of the sorting permutation.
fn signed_insert(set: &[usize], j: usize) -> Option<(Vec<usize>, i64)> {
    if set.contains(&j) {
        return None;
    }
    let above = set.iter().filter(|&&s| s > j).count();
    let mut out = set.to_vec();
    out.push(j);
    out.sort_unstable();
    Some((out, if above % 2 == 0 { 1 } else { -1 }))
}

/// All quadratic Plücker relations of `Gr(k, n)` in the `C(n, k)`
/// coordinates indexed by lexicographic `k`-subsets:
/// `Σ_l (−1)^l p_{I∪j_l} p_{J∖j_l}` for `|I| = k−1`, `|J| = k+1`.
fn all_plucker_relations(k: usize, n: usize) -> Vec<(Poly, usize)> {
    let coords = subsets(n, k);
    let index: BTreeMap<Vec<usize>, usize> = coords.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let nv = coords.len();
    let mut out = Vec::new();
    for i_set in subsets(n, k - 1) {
        for j_set in subsets(n, k + 1) {
            let mut rel = MultiPoly::zero(nv);
            let mut terms = 0;
            for (l, &j) in j_set.iter().enumerate() {
                let Some((left, sign)) = signed_insert(&i_set, j) else { continue };
                let right: Vec<usize> = j_set.iter().copied().filter(|&x| x != j).collect();
                let s = sign * if l % 2 == 0 { 1 } else { -1 };
                let t = var(nv, index[&left]).mul(&var(nv, index[&right])).scale(&int(s));
                rel = rel.add(&t);
                terms += 1;
            }
            if !rel.is_zero() {
                out.push((rel, terms));
            }
        }
    }
    out
}

/// Keeps the relations that are linearly independent of the earlier ones.
fn independent(polys: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let mut pivots: Vec<(Monomial, BTreeMap<Monomial, Rational>)> = Vec::new();
    let mut kept = Vec::new();
    for p in polys {
        let mut row: BTreeMap<Monomial, Rational> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        for (pm, prow) in &pivots {
            let Some(c) = row.get(pm).cloned() else { continue };
            for (m, v) in prow {
                let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                *e = e.clone() - c.clone() * v;
                if Field::is_zero(e) {
                    row.remove(m);
                }
            }
        }
        let Some((lead, lc)) = row.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else { continue };
        let row = row.into_iter().map(|(m, c)| (m, c / &lc)).collect();
        pivots.push((lead, row));
        pivots.sort_by(|a, b| b.0.cmp(&a.0));
        kept.push(p);
    }
    kept
}

/// A basis of the quadrics vanishing on `Gr(k, n)`.
pub fn grassmannian_plucker_relations(k: usize, n: usize) -> Vec<Poly> {
    independent(all_plucker_relations(k, n).into_iter().map(|(p, _)| p))
}

/// The independent relations among those with exactly three terms.
pub fn three_term_relations(k: usize, n: usize) -> Vec<Poly> {
    independent(all_plucker_relations(k, n).into_iter().filter(|(_, t)| *t == 3).map(|(p, _)| p))
}

/// `x_ij·x_kl − x_ik·x_jl + x_il·x_jk` for `i < j < k < l`, in the
/// coordinates indexed by `pairs`.
fn gr2_relations(points: &[usize], pairs: &[(usize, usize)], embed: &dyn Fn(usize) -> Poly) -> Vec<Poly> {
    let x = |a: usize, b: usize| embed(pairs.iter().position(|&p| p == (a, b)).expect("pair present"));
    let mut out = Vec::new();
    for q in subsets(points.len(), 4) {
        let [i, j, k, l] = [points[q[0]], points[q[1]], points[q[2]], points[q[3]]];
        out.push(x(i, j).mul(&x(k, l)).sub(&x(i, k).mul(&x(j, l))).add(&x(i, l).mul(&x(j, k))));
    }
    out
}

fn pair_names(pairs: &[(usize, usize)]) -> Vec<String> {
    pairs.iter().map(|(i, j)| format!("x{i}{j}")).collect()
}

fn lex_pairs(points: &[usize]) -> Vec<(usize, usize)> {
    subsets(points.len(), 2).iter().map(|s| (points[s[0]], points[s[1]])).collect()
}

/// The invariant quadric on `∧²V_ξ` in coordinates `x12 … x45`.
fn invariant_quadric(x: &dyn Fn(usize, usize) -> Poly) -> Poly {
    x(1, 2).mul(&x(1, 3)).add(&x(2, 3).mul(&x(2, 4))).add(&x(3, 4).mul(&x(3, 5))).sub(&x(4, 5).mul(&x(1, 4))).add(&x(1, 5).mul(&x(2, 5)))
}

/// The GM threefold: `Gr(2, 5)` on the `P⁷` cut by `x03 + x12 = x04 − x23 = 0`,
/// in the remaining coordinates, and the quadric `x01x02 − x13x14 − x24x34`.
pub fn x3_ideal() -> IdealText {
    let points = [0, 1, 2, 3, 4];
    let pairs = lex_pairs(&points);
    let kept: Vec<(usize, usize)> = pairs.iter().copied().filter(|&p| p != (0, 3) && p != (0, 4)).collect();
    let nv = kept.len();
    let coord = |a: usize, b: usize| var(nv, kept.iter().position(|&p| p == (a, b)).expect("kept"));
    let embed = |k: usize| match pairs[k] {
        (0, 3) => coord(1, 2).neg(),
        (0, 4) => coord(2, 3),
        (a, b) => coord(a, b),
    };
    let mut polys = gr2_relations(&points, &pairs, &embed);
    polys.push(coord(0, 1).mul(&coord(0, 2)).sub(&coord(1, 3).mul(&coord(1, 4))).sub(&coord(2, 4).mul(&coord(3, 4))));
    IdealText { names: pair_names(&kept), polys }
}

/// The GM fivefold `Gr(2, V_ξ) ∩ Q` in `P(∧²V_ξ)`.
pub fn x5_ideal() -> IdealText {
    let points = [1, 2, 3, 4, 5];
    let pairs = lex_pairs(&points);
    let nv = pairs.len();
    let x = |a: usize, b: usize| var(nv, pairs.iter().position(|&p| p == (a, b)).expect("pair"));
    let mut polys = gr2_relations(&points, &pairs, &|k| var(nv, k));
    polys.push(invariant_quadric(&x));
    IdealText { names: pair_names(&pairs), polys }
}

/// The GM sixfold `x00² = Q` over `Gr(2, V_ξ)` in `P(C ⊕ ∧²V_ξ)`.
pub fn sixfold_ideal() -> IdealText {
    let points = [1, 2, 3, 4, 5];
    let pairs = lex_pairs(&points);
    let nv = pairs.len() + 1;
    let x = |a: usize, b: usize| var(nv, 1 + pairs.iter().position(|&p| p == (a, b)).expect("pair"));
    let x00 = var(nv, 0);
    let mut polys = vec![x00.mul(&x00).sub(&invariant_quadric(&x))];
    polys.extend(gr2_relations(&points, &pairs, &|k| var(nv, k + 1)));
    let mut names = vec!["x00".to_string()];
    names.extend(pair_names(&pairs));
    IdealText { names, polys }
}

/// Plücker quadrics of `Gr(3, 6)` pulled back along
/// `t = Σ a_m·(row m of basis)`; the rows are trivectors in the
/// lexicographic basis `e_ijk`. The ideal defines the decomposable vectors
/// of the row space.
pub fn decomposable_vector_ideal(basis: &Matrix<Rational>) -> IdealText {
    assert_eq!(basis.cols(), 20, "trivectors of a six-dimensional space");
    let m = basis.rows();
    let linear: Vec<Poly> = (0..20)
        .map(|t| (0..m).fold(MultiPoly::zero(m), |acc, r| acc.add(&var(m, r).scale(&basis[(r, t)]))))
        .collect();
    let polys = grassmannian_plucker_relations(3, 6).iter().map(|q| q.substitute(&linear)).filter(|q| !q.is_zero()).collect();
    IdealText { names: (0..m).map(|i| format!("a{i}")).collect(), polys }
}

/// The sextic and its partial derivatives.
pub fn sextic_singular_ideal() -> IdealText {
    let f = klein_sextic();
    let mut polys = vec![f.clone()];
    polys.extend((0..6).map(|i| f.derivative(i)));
    IdealText { names: default_names(6), polys }
}
