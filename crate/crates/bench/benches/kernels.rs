use criterion::{criterion_group, criterion_main, Criterion};

use klein_core::epw::{build_a, sextic_by_bareiss, sextic_by_interpolation};
use klein_core::groebner::{decomposable_vector_ideal, x3_ideal, Budget, Ideal, SmoothnessOptions};
use klein_core::hermitian::build_hprime;
use klein_core::klein::{gen_a, gen_c, weil_outside_borel, GroupTable, CLOSURE_CAP};
use klein_core::lattice::Lattice;

fn sextic(c: &mut Criterion) {
    let a = build_a();
    let mut g = c.benchmark_group("sextic");
    g.sample_size(10);
    g.bench_function("bareiss", |b| b.iter(|| sextic_by_bareiss(&a).unwrap()));
    g.bench_function("interpolation", |b| b.iter(|| sextic_by_interpolation(&a).unwrap()));
    g.finish();
}

fn group(c: &mut Criterion) {
    let gens = [gen_a(), gen_c(), weil_outside_borel().unwrap()];
    let mut g = c.benchmark_group("group");
    g.sample_size(10);
    g.bench_function("closure", |b| b.iter(|| GroupTable::generate(&gens, CLOSURE_CAP).unwrap().len()));
    g.finish();
}

fn groebner(c: &mut Criterion) {
    let dec = decomposable_vector_ideal(build_a().basis());
    let x3 = x3_ideal();
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    g.bench_function("decomposable_emptiness", |b| {
        b.iter(|| Ideal::from_rational(32003, &dec.polys).unwrap().projective_empty(&Budget::default()).unwrap().empty)
    });
    g.bench_function("threefold_smoothness", |b| {
        b.iter(|| {
            let i = Ideal::from_rational(32003, &x3.polys).unwrap();
            i.smoothness_check(4, &Budget::default(), &SmoothnessOptions::default()).unwrap().smooth
        })
    });
    g.finish();
}

fn lattices(c: &mut Criterion) {
    let e8 = Lattice::e8(-1);
    let picard = Lattice::parse_spec("(2) + E8(-1)^2 + [[-2,-1],[-1,-6]]^2").unwrap();
    let diag = Lattice::parse_spec("(-4)^2 + (-6) + (-8)").unwrap();
    c.bench_function("lattice/e8_roots", |b| b.iter(|| e8.vectors_of_norm(-2).unwrap().len()));
    c.bench_function("lattice/picard_disc_isotropic", |b| b.iter(|| picard.disc_group().unwrap().isotropic_elements().unwrap().len()));
    c.bench_function("lattice/represented_values_200", |b| b.iter(|| diag.represented_values(200, false).unwrap().len()));
}

fn hermitian(c: &mut Criterion) {
    let h = build_hprime();
    c.bench_function("hermitian/induced_wedge2_det", |b| b.iter(|| h.induced_wedge2().det().unwrap()));
}

criterion_group!(benches, sextic, group, groebner, lattices, hermitian);
criterion_main!(benches);
