use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::{CycloNum, UniPoly};
use crate::klein::{extend_to_v6, gen_a, gen_c, klein_table, weil_outside_borel};
use crate::polytext::parse_polynomial;

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn unit(i: usize) -> Vec<Rational> {
    (0..6).map(|j| q((i == j) as i64)).collect()
}

fn fixture_sextic() -> Sextic {
    crate::fixtures::sextic().unwrap()
}

/// A Lagrangian graph over `span{e_0jk}` from a symmetric matrix.
fn random_lagrangian(rng: &mut ChaCha8Rng) -> Lagrangian {
    let omega = Matrix::from_fn(10, 10, |a, d| {
        let mut x = vec![q(0); 20];
        let mut y = vec![q(0); 20];
        x[a] = q(1);
        y[10 + d] = q(1);
        wedge_pairing(&x, &y)
    });
    let mut r = Matrix::<Rational>::zeros(10, 10);
    for i in 0..10 {
        for j in i..10 {
            let v = q(rng.gen_range(-3..=3));
            r[(i, j)] = v.clone();
            r[(j, i)] = v;
        }
    }
    let bt = omega.inverse().unwrap().mul(&r);
    let b = bt.transpose();
    let rows = (0..10)
        .map(|i| (0..20).map(|p| if p < 10 { q((p == i) as i64) } else { b[(i, p - 10)].clone() }).collect())
        .collect();
    Lagrangian::new(Matrix::from_rows(rows)).unwrap()
}

#[test]
fn trivector_indexing() {
    assert_eq!(triples().len(), 20);
    assert_eq!(triples()[0], [0, 1, 2]);
    assert_eq!(triples()[19], [3, 4, 5]);
    assert_eq!(triple_index(2, 1, 0), Some((0, -1)));
    assert_eq!(triple_index(1, 2, 0), Some((0, 1)));
    assert_eq!(triple_index(1, 1, 0), None);
    let trip = xi_triples();
    assert!(trip.iter().enumerate().all(|(i, t)| triple_index(t[0], t[1], t[2]) == Some((10 + i, 1))));
}

#[test]
fn wedge_pairing_is_antisymmetric() {
    let a = basis_trivector::<Rational>(0, 1, 2);
    let b = basis_trivector::<Rational>(3, 4, 5);
    assert_eq!(wedge_pairing(&a, &b), q(1));
    assert_eq!(wedge_pairing(&b, &a), q(-1));
    let c = basis_trivector::<Rational>(0, 2, 4);
    let d = basis_trivector::<Rational>(1, 3, 5);
    assert_eq!(wedge_pairing(&c, &d), q(-1));
    assert_eq!(wedge_pairing(&a, &a), q(0));
}

#[test]
fn klein_lagrangian_rows() {
    let a = build_a();
    let row0 = a.basis().row(0);
    let e012 = basis_trivector::<Rational>(0, 1, 2);
    let e245 = basis_trivector::<Rational>(2, 4, 5);
    let expected: Vec<Rational> = e012.iter().zip(&e245).map(|(x, y)| x.clone() + y).collect();
    assert_eq!(row0, expected.as_slice());
    // e015 − e134
    let r = a.basis().row(3);
    assert_eq!(r[triple_index(0, 1, 5).unwrap().0], q(1));
    assert_eq!(r[triple_index(1, 3, 4).unwrap().0], q(-1));
    assert!(a.is_isotropic());
}

#[test]
fn non_isotropic_subspace_is_rejected() {
    // e012 pairs nontrivially with its complement e345
    let rows: Vec<Vec<Rational>> =
        (0..9).chain([19]).map(|i| (0..20).map(|p| q((p == i) as i64)).collect()).collect();
    assert_eq!(Lagrangian::new(Matrix::from_rows(rows)), Err(EpwError::NotIsotropic));
    let short = Matrix::<Rational>::zeros(3, 20);
    assert!(matches!(Lagrangian::new(short), Err(EpwError::BadShape { rows: 3, .. })));
}

#[test]
fn v_is_equivariant_and_a_is_stable() {
    let s = weil_outside_borel().unwrap();
    let vc = build_v().map(CycloNum::from_rational);
    let a = build_a();
    for g in [gen_a(), gen_c(), s] {
        assert_eq!(vc.mul(&g.compound(2)), g.compound(3).mul(&vc));
        assert!(a.is_stable_under(&extend_to_v6(&g).compound(3)));
    }
    let scale = CMat::diagonal(&[2, 1, 1, 1, 1, 1].map(CycloNum::from_i64));
    assert!(!a.is_stable_under(&scale.compound(3)));
}

#[test]
fn equivariant_map_is_unique_and_matches_v() {
    let s = weil_outside_borel().unwrap();
    let gens = [gen_c(), gen_a(), s];
    assert_eq!(equivariant_v(&gens).unwrap(), build_v());
    let dual: Vec<CMat> = gens.iter().map(|g| g.inverse().unwrap().transpose()).collect();
    let vd = equivariant_v(&dual).unwrap();
    assert!(graph_of(&vd).unwrap().same_subspace(&build_a()));
    assert!(matches!(equivariant_v(&[gen_c()]), Err(EpwError::NoEquivariantMap { dim: 10 })));
}

fn duality_oracle(a: &Lagrangian) -> bool {
    let ann = a.basis().kernel_basis();
    duality_image(a).vstack(&ann.transpose()).rank() == 10
}

#[test]
fn self_duality() {
    let a = build_a();
    assert!(self_duality_check(&a));
    assert!(duality_oracle(&a));
    let rows = (0..10).map(|i| (0..20).map(|p| q((p == i) as i64)).collect()).collect();
    let plain = Lagrangian::new(Matrix::from_rows(rows)).unwrap();
    assert!(!self_duality_check(&plain));
    assert!(!duality_oracle(&plain));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let l = random_lagrangian(&mut rng);
        assert_eq!(self_duality_check(&l), duality_oracle(&l));
    }
}

#[test]
fn strata_and_gm_dimensions() {
    let a = build_a();
    assert_eq!(stratum(&a, &unit(0)).unwrap(), 0);
    for i in 1..6 {
        assert_eq!(stratum(&a, &unit(i)).unwrap(), 2, "e{i}");
    }
    assert_eq!(stratum(&a, &vec![q(0); 6]), Err(EpwError::ZeroVector));
    assert_eq!(intersection_with_hyperplane(&a, &unit(5)).unwrap(), 2);
    assert_eq!(gm_dimension(&a, &unit(5)).unwrap(), 3);
    assert_eq!(intersection_with_hyperplane(&a, &unit(0)).unwrap(), 0);
    assert_eq!(gm_dimension(&a, &unit(0)).unwrap(), 5);
    // ⟨e014 + e123, e034 + e124⟩ ⊂ 𝔸 ∩ ∧³⟨e0…e4⟩
    let span = Matrix::from_rows(vec![
        basis_trivector::<Rational>(0, 1, 4).iter().zip(basis_trivector::<Rational>(1, 2, 3)).map(|(x, y)| x.clone() + y).collect(),
        basis_trivector::<Rational>(0, 3, 4).iter().zip(basis_trivector::<Rational>(1, 2, 4)).map(|(x, y)| x.clone() + y).collect(),
    ]);
    assert_eq!(a.basis().vstack(&span).rank(), 10);
    for i in 1..6 {
        assert_eq!(gm_dimension(&a, &unit(i)).unwrap(), 3);
    }
    let skew = [q(1), q(1), q(0), q(0), q(0), q(0)];
    assert!(gm_dimension(&a, &skew).unwrap() >= 3);
}

#[test]
fn sextic_matches_the_published_equation() {
    let f = klein_sextic();
    assert_eq!(f.len(), 37);
    assert_eq!(*f, fixture_sextic());
    let (m, c) = f.leading_term().unwrap();
    assert_eq!(m.exps(), &[6, 0, 0, 0, 0, 0]);
    assert_eq!(*c, q(1));
}

#[test]
fn determinant_routes_agree() {
    let a = build_a();
    assert_eq!(sextic_by_bareiss(&a).unwrap(), sextic_by_interpolation(&a).unwrap());
}

#[test]
fn projected_matrix_matches_the_transcribed_one() {
    let rows = [
        "-1;0;0;0;0;x5;-x4;0;0;x2",
        "0;-1;0;0;0;0;0;-x5;x4;-x3",
        "x3;-x2;-1;0;x1;0;0;0;0;0",
        "0;-x4;x3;-1;0;0;0;-x1;0;0",
        "0;x5;0;-x3;-1;0;0;0;x1;0",
        "0;0;-x5;x4;0;-1;0;0;0;-x1",
        "0;0;0;0;x4;-x3;-1;x2;0;0",
        "x4;0;-x2;0;0;x1;0;-1;0;0",
        "-x5;0;0;x2;0;0;-x1;0;-1;0",
        "0;0;0;0;x5;0;-x3;0;x2;-1",
    ];
    let names: Vec<String> = (0..6).map(|i| format!("x{i}")).collect();
    let (p0, ms) = affine_pencil(&build_a()).unwrap();
    let vinv = build_v().inverse().unwrap();
    let p0 = vinv.mul(&p0);
    let ms: Vec<_> = ms.iter().map(|m| vinv.mul(m)).collect();
    for (r, line) in rows.iter().enumerate() {
        for (c, src) in line.split(';').enumerate() {
            let e = parse_polynomial(src, &names).unwrap();
            let konst = e.coefficient(&crate::arith::Monomial::new(vec![0; 6]));
            assert_eq!(p0[(r, c)], konst, "constant at ({r},{c})");
            for i in 1..6 {
                let mut ex = vec![0; 6];
                ex[i] = 1;
                assert_eq!(ms[i - 1][(r, c)], e.coefficient(&crate::arith::Monomial::new(ex)), "x{i} at ({r},{c})");
            }
        }
    }
}

#[test]
fn sextic_is_invariant() {
    let f = klein_sextic();
    let s = weil_outside_borel().unwrap();
    for g in [gen_a(), gen_c(), s] {
        let g6 = extend_to_v6(&g);
        assert_eq!(g6.det(), CycloNum::one());
        assert!(is_invariant_under(f, &g6));
    }
    let scale = CMat::diagonal(&[1, 2, 1, 1, 1, 1].map(CycloNum::from_i64));
    assert!(!is_invariant_under(f, &scale));
}

#[test]
fn invariant_quadric() {
    let names: Vec<String> = xi_pairs().iter().map(|[a, b]| format!("x{a}{b}")).collect();
    let quad = parse_polynomial("x12*x13 + x23*x24 + x34*x35 - x45*x14 + x15*x25", &names).unwrap();
    let sym = Matrix::from_fn(10, 10, |i, j| {
        let mut e = vec![0u32; 10];
        e[i] += 1;
        e[j] += 1;
        let c = quad.coefficient(&crate::arith::Monomial::new(e));
        let c = CycloNum::from_rational(&c);
        if i == j { c } else { c * CycloNum::from_i64(2).inv() }
    });
    let s = weil_outside_borel().unwrap();
    for g in [gen_a(), gen_c(), s] {
        let w = g.compound(2);
        assert_eq!(w.transpose().mul(&sym).mul(&w), sym);
    }
}

#[test]
fn stratum_detects_the_sextic() {
    let a = build_a();
    let f = klein_sextic();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut on = 0;
    for _ in 0..500 {
        let x: Vec<Rational> = (0..6).map(|_| q(rng.gen_range(-2..=2))).collect();
        if x.iter().all(|v| Field::is_zero(v)) {
            continue;
        }
        let l = stratum(&a, &x).unwrap();
        let vanishes = Field::is_zero(&f.eval(&x));
        on += vanishes as usize;
        assert_eq!(l >= 1, vanishes, "{x:?}");
    }
    assert!(on > 0);
}

fn order5_line() -> (Vec<Rational>, Vec<Rational>) {
    (unit(0), vec![q(0), q(1), q(1), q(1), q(1), q(1)])
}

#[test]
fn order_five_line() {
    let (p, qq) = order5_line();
    let form = restrict_to_line(klein_sextic(), &p, &qq).unwrap();
    let expected = BinaryForm::new([1, 0, 0, 10, 0, -12, 5].map(q).to_vec());
    assert_eq!(form, expected);
    assert_eq!(form.to_string(), "s^6 + 10*s^3*t^3 - 12*s*t^5 + 5*t^6");
    let mut pattern = form.root_pattern().unwrap();
    pattern.sort();
    assert_eq!(pattern, vec![(2, 1), (2, 2)]);
    assert_eq!(form.distinct_roots().unwrap(), 4);
    let decomposition = crate::arith::squarefree_decomposition(&form.dehomogenize()).unwrap();
    let double = decomposition.iter().find(|(_, m)| *m == 2).unwrap();
    assert_eq!(double.0.monic(), UniPoly::<Rational>::from_i64(&[-1, 1, 1]));
}

#[test]
fn strata_along_the_order_five_line() {
    let a = build_a();
    let point = |u: CycloNum| -> Vec<CycloNum> {
        let mut v = vec![u];
        v.extend((0..5).map(|_| CycloNum::one()));
        v
    };
    // roots of u² + u − 1 are ζ₅ + ζ₅⁴ and ζ₅² + ζ₅³
    for u in [CycloNum::zeta(5, 1) + CycloNum::zeta(5, 4), CycloNum::zeta(5, 2) + CycloNum::zeta(5, 3)] {
        assert_eq!(stratum(&a, &point(u)).unwrap(), 2);
    }
    // roots of u² − 2u + 5 are 1 ± 2i
    for sign in [1, -1] {
        let u = CycloNum::one() + CycloNum::zeta(4, 1) * CycloNum::from_i64(2 * sign);
        assert_eq!(stratum(&a, &point(u)).unwrap(), 1);
    }
    assert_eq!(stratum(&a, &point(CycloNum::from_i64(3))).unwrap(), 0);
}

#[test]
fn restriction_rejects_dependent_points() {
    let (p, _) = order5_line();
    let twice: Vec<Rational> = p.iter().map(|x| x.clone() * q(2)).collect();
    assert_eq!(restrict_to_line(klein_sextic(), &p, &twice), Err(EpwError::DependentPoints));
}

fn class_element(label: &str) -> (CMat, u32) {
    let t = klein_table().unwrap();
    let cl = t.class_by_label(label).unwrap();
    (extend_to_v6(t.element(cl.representative)), cl.order)
}

#[test]
fn fixed_loci_shapes() {
    let (g, n) = class_element("a");
    let mut dims: Vec<usize> = fixed_locus(&g, n).iter().map(Eigenspace::dim).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 1, 1, 2]);
    let (g, n) = class_element("b3");
    let mut dims: Vec<usize> = fixed_locus(&g, n).iter().map(Eigenspace::dim).collect();
    dims.sort();
    assert_eq!(dims, vec![2, 4]);
    let (g, n) = class_element("c");
    assert_eq!(fixed_locus(&g, n).len(), 6);
}

#[test]
fn order_two_line_meets_the_sextic_in_six_points() {
    let (g, n) = class_element("b3");
    let spaces = fixed_locus(&g, n);
    let line = spaces.iter().find(|s| s.dim() == 2).unwrap();
    assert_eq!(line.eigenvalue, CycloNum::from_i64(-1));
    let form = restrict_to_line(klein_sextic(), &line.vector(0), &line.vector(1)).unwrap();
    assert_eq!(form.distinct_roots().unwrap(), 6);
    assert!(form.is_squarefree().unwrap());
    assert!(matches!(
        fixed_point_count(klein_sextic(), &g, n),
        Err(EpwError::PositiveDimensional { dim: 2 })
    ));
}

#[test]
fn fixed_point_counts_for_odd_orders() {
    let f = klein_sextic();
    let (g, n) = class_element("c");
    let c = fixed_point_count(f, &g, n).unwrap();
    assert_eq!((c.isolated, c.total()), (5, 5));
    let (g, n) = class_element("a");
    let c = fixed_point_count(f, &g, n).unwrap();
    assert_eq!(c.on_lines, vec![4]);
    assert_eq!(c.total(), 8);
}

#[test]
fn fixed_point_counts_for_orders_three_and_six() {
    let f = klein_sextic();
    let (g, n) = class_element("b2");
    assert_eq!(fixed_point_count(f, &g, n).unwrap().total(), 15);
    let (g, n) = class_element("b");
    assert_eq!(fixed_point_count(f, &g, n).unwrap().total(), 7);
}

#[test]
fn point_normalization() {
    let v = [q(0), q(3), q(-6)];
    assert_eq!(normalize_point(&v).unwrap(), vec![q(0), q(1), q(-2)]);
    assert_eq!(normalize_point(&[q(0), q(0)]), Err(EpwError::ZeroVector));
}
