use proptest::prelude::*;

use super::*;
use crate::epw::{build_a, triples, Lagrangian};
use crate::fixtures;
use crate::arith::Field;
use crate::linalg::Matrix;

fn ring(p: u32, names: &[&str], src: &str) -> Ideal {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let polys = crate::polytext::parse_polynomials(src, &names).unwrap();
    Ideal::from_rational(p, &polys).unwrap()
}

fn basis_text(i: &mut Ideal) -> Vec<String> {
    i.groebner(&Budget::default()).unwrap().iter().map(|f| format!("{f:?}")).collect()
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
fn is_groebner(g: &[FPoly]) -> bool {
    let reduce = |f: &FPoly| buchberger::reduce_with(f, |t| g.iter().find(|h| h.lm().divides(t)));
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            let l = g[a].lm().lcm(&g[b].lm());
            let s = g[a].mul_term(&g[a].lm().quotient_of(&l), 1).add_scaled(&g[b], &g[b].lm().quotient_of(&l), g[a].field().neg(1));
            if !reduce(&s).is_zero() {
                return false;
            }
        }
    }
    true
}

#[test]
fn field_arithmetic() {
    assert_eq!(Fp::new(32004), Err(GroebnerError::NotPrime(32004)));
    assert_eq!(Fp::new(1), Err(GroebnerError::NotPrime(1)));
    for p in PRIMES {
        let f = Fp::new(p).unwrap();
        assert_eq!(f.mul(12345, f.inv(12345)), 1);
        assert_eq!(f.lift(f.from_i64(-7)), -7);
    }
}

#[test]
fn trivial_bases() {
    let mut i = ring(7, &["x", "y"], "x; y");
    assert_eq!(basis_text(&mut i), ["x1", "x0"]);
    let mut i = ring(7, &["x"], "x^2 - 1; x - 1");
    assert_eq!(basis_text(&mut i), ["x0-1"]);
    let mut i = ring(7, &["x", "y"], "x + 1; y; x*y - 1");
    assert_eq!(basis_text(&mut i), ["1"]);
}

#[test]
fn hand_s_polynomial() {
    // S(x² + y², xy) = y³, and nothing further
    let mut i = ring(7, &["x", "y"], "x^2 + y^2; x*y");
    assert_eq!(basis_text(&mut i), ["x0*x1", "x0^2+x1^2", "x1^3"]);
    assert!(i.projective_empty(&Budget::default()).unwrap().empty);
}

#[test]
fn emptiness_examples() {
    let b = Budget::default();
    assert!(ring(32003, &["x", "y", "z"], "x; y; z").projective_empty(&b).unwrap().empty);
    let e = ring(32003, &["x", "y"], "x*y").projective_empty(&b).unwrap();
    assert_eq!(e.missing, vec![0, 1]);
    let e = ring(32003, &["x", "y", "z"], "x^2 - y*z; y^2").projective_empty(&b).unwrap();
    assert!(!e.empty);
    let mut inhomogeneous = ring(32003, &["x"], "x - 1");
    assert_eq!(inhomogeneous.projective_empty(&b), Err(GroebnerError::NotHomogeneous(0)));
}

#[test]
fn budget_is_reported() {
    let mut i = ring(32003, &["x", "y", "z", "w"], "x^3 - y*z*w; y^3 - x*z^2; z^3 - x*y*w; w^3 - x^2*y");
    let tight = Budget { max_pairs: 2, ..Budget::default() };
    assert!(matches!(i.groebner(&tight), Err(GroebnerError::BudgetExhausted { .. })));
    let shallow = Budget { max_degree: 3, ..Budget::default() };
    assert!(matches!(i.clone().groebner(&shallow), Err(GroebnerError::BudgetExhausted { .. })));
}

#[test]
fn ideal_files() {
    let t = parse_ideal("# two lines\nvars: u v\nu^2 - v^2;\nu*v").unwrap();
    assert_eq!(t.names, ["u", "v"]);
    assert_eq!(t.polys.len(), 2);
    assert!(matches!(parse_ideal("u^2"), Err(GroebnerError::Format(_))));
    assert!(matches!(parse_ideal("vars: u\nu + w"), Err(GroebnerError::Parse(_))));
}

#[test]
fn plucker_relation_counts() {
    let g25 = grassmannian_plucker_relations(2, 5);
    assert_eq!(g25.len(), 5);
    let g36 = grassmannian_plucker_relations(3, 6);
    assert_eq!(g36.len(), 35);
    assert!(g36.iter().all(|q| q.is_homogeneous() && q.total_degree() == Some(2)));
    // three-term relations alone span a proper subspace
    assert_eq!(three_term_relations(3, 6).len(), 30);
    // every relation vanishes on a random decomposable trivector
    let p = 32003;
    let field = Fp::new(p).unwrap();
    let u = [[3u32, 1, 4, 1, 5, 9], [2, 6, 5, 3, 5, 8], [9, 7, 9, 3, 2, 3]];
    let minors: Vec<u32> = triples()
        .iter()
        .map(|t| {
            let m = Matrix::from_fn(3, 3, |r, c| crate::arith::Rational::from_i64(u[r][t[c]] as i64));
            field.from_rational(&m.det()).unwrap()
        })
        .collect();
    for q in &g36 {
        assert_eq!(FPoly::from_rational(field, q).unwrap().eval(&minors), 0);
    }
}

#[test]
fn no_decomposable_vectors() {
    let t = decomposable_vector_ideal(build_a().basis());
    assert_eq!(t.names.len(), 10);
    for p in [32003, 65537] {
        let mut i = Ideal::from_rational(p, &t.polys).unwrap();
        assert!(i.projective_empty(&Budget::default()).unwrap().empty, "p = {p}");
    }
}

#[test]
fn decomposable_negative_control() {
    // span{e_0jk} contains e_012
    let rows = Matrix::from_fn(10, 20, |r, c| crate::arith::Rational::from_i64((r == c) as i64));
    assert!(Lagrangian::new(rows.clone()).is_ok());
    let t = decomposable_vector_ideal(&rows);
    let mut i = Ideal::from_rational(32003, &t.polys).unwrap();
    assert!(!i.projective_empty(&Budget::default()).unwrap().empty);
}

#[test]
fn smoothness_examples() {
    let b = Budget::default();
    let o = SmoothnessOptions::default();
    let q = ring(32003, &["x", "y", "z", "w"], "x^2 + y^2 + z^2 + w^2");
    assert!(q.smoothness_check(1, &b, &o).unwrap().smooth);
    let conic = ring(32003, &["x", "y", "z"], "x*y - z^2");
    assert!(conic.smoothness_check(1, &b, &o).unwrap().smooth);
    let cusp = ring(32003, &["x", "y", "z"], "x^2*y");
    assert!(!cusp.smoothness_check(1, &b, &o).unwrap().smooth);
    let twisted = ring(32003, &["x", "y", "z", "w"], "x*z - y^2; y*w - z^2; x*w - y*z");
    let s = twisted.smoothness_check(2, &b, &SmoothnessOptions { minor_sample: Some(3), seed: 1 }).unwrap();
    assert!(s.smooth);
    assert_eq!(s.minors_total, 18);
}

#[test]
fn fixtures_match_derived_ideals() {
    assert_eq!(fixtures::x3().unwrap(), x3_ideal());
    assert_eq!(fixtures::x5().unwrap(), x5_ideal());
    assert_eq!(fixtures::sixfold().unwrap(), sixfold_ideal());
}

#[test]
fn threefold_is_smooth_at_two_primes() {
    let t = x3_ideal();
    let runs = at_primes(&PRIMES[..2], |p| {
        Ideal::from_rational(p, &t.polys)?.smoothness_check(4, &Budget::default(), &SmoothnessOptions::default())
    })
    .unwrap();
    assert!(runs.iter().all(|r| r.result.smooth && !r.result.subsampled), "{runs:?}");
    assert_eq!(runs[0].result.minors_total, 15 * 70);
}

#[test]
fn threefold_dimension() {
    // the affine cone has dimension 4: adding four general linear forms empties it
    let t = x3_ideal();
    let mut i = Ideal::from_rational(32003, &t.polys).unwrap();
    assert!(!i.projective_empty(&Budget::default()).unwrap().empty);
    let f = i.field();
    let coeffs = [[1, 2, 3, 5, 7, 11, 13, 17], [19, 23, 29, 31, 37, 41, 43, 47], [3, 1, 4, 1, 5, 9, 2, 6], [2, 7, 1, 8, 2, 8, 1, 8]];
    let lin = |c: &[i64; 8]| FPoly::from_terms(f, 8, (0..8).map(|v| (Mono::var(v), f.from_i64(c[v]))));
    let mut three = i.with_generators(coeffs[..3].iter().map(lin)).unwrap();
    assert!(!three.projective_empty(&Budget::default()).unwrap().empty);
    let mut four = i.with_generators(coeffs.iter().map(lin)).unwrap();
    assert!(four.projective_empty(&Budget::default()).unwrap().empty);
}

fn arb_ideal() -> impl Strategy<Value = Vec<Vec<(u32, u32, u32, u32)>>> {
    // up to four polynomials of up to four terms in three variables
    proptest::collection::vec(proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, 1u32..101), 1..4), 1..4)
}

fn build(p: u32, spec: &[Vec<(u32, u32, u32, u32)>]) -> Ideal {
    let f = Fp::new(p).unwrap();
    let gens = spec
        .iter()
        .map(|terms| FPoly::from_terms(f, 3, terms.iter().map(|&(a, b, c, k)| (Mono::from_exps(&[a, b, c]).unwrap(), k))))
        .collect();
    Ideal::new(gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bases_are_reduced_and_stable(spec in arb_ideal()) {
        let mut i = build(101, &spec);
        let g = i.groebner(&Budget::default()).unwrap().to_vec();
        prop_assert!(is_groebner(&g));
        for f in i.gens() {
            prop_assert_eq!(i.contains(f), Some(true));
        }
        for (k, f) in g.iter().enumerate() {
            prop_assert_eq!(f.leading().unwrap().1, 1);
            for (m, _) in f.terms() {
                prop_assert!(g.iter().enumerate().all(|(j, h)| j == k || !h.lm().divides(m)));
            }
        }
        let mut again = Ideal::new(g.clone()).unwrap();
        prop_assert_eq!(again.groebner(&Budget::default()).unwrap(), &g[..]);
    }

    #[test]
    fn emptiness_is_monotone(spec in arb_ideal(), extra in arb_ideal()) {
        let homog = |s: &[Vec<(u32, u32, u32, u32)>]| -> Vec<Vec<(u32, u32, u32, u32)>> {
            // force every term into degree 2 by padding the last variable
            s.iter().map(|t| t.iter().filter(|x| x.0 + x.1 <= 2).map(|&(a, b, _, k)| (a, b, 2 - a - b, k)).collect::<Vec<_>>())
                .filter(|t: &Vec<_>| !t.is_empty()).collect()
        };
        let (s, e) = (homog(&spec), homog(&extra));
        prop_assume!(!s.is_empty() && !e.is_empty());
        let mut small = build(101, &s);
        let mut big = build(101, &[s.clone(), e].concat());
        let b = Budget::default();
        if small.projective_empty(&b).unwrap().empty {
            prop_assert!(big.projective_empty(&b).unwrap().empty);
        }
    }
}
