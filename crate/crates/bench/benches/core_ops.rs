use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cayley_bench::{cubic_form, dense_degree_five, quadric_form, twisted_cubic_curve};
use cayley_core::chow::{chow_form_of_curve, honest_test};
use cayley_core::groebner::IdealBasis;
use cayley_core::harmonic::{canonical_rep, decompose};
use cayley_core::{bracket, klein_quadric, MonomialOrder, VarSet};

fn bench_bracket(c: &mut Criterion) {
    let f = dense_degree_five();
    c.bench_function("bracket_degree5", |b| {
        b.iter(|| bracket(black_box(&f), black_box(&f)).unwrap())
    });
}

fn bench_decompose(c: &mut Criterion) {
    let f = dense_degree_five();
    c.bench_function("harmonic_decompose_degree5", |b| {
        b.iter(|| decompose(black_box(&f)).unwrap())
    });
}

fn bench_canonical_rep(c: &mut Criterion) {
    let f = cubic_form();
    c.bench_function("canonical_rep_cubic", |b| {
        b.iter(|| canonical_rep(black_box(&f)).unwrap())
    });
}

fn bench_groebner(c: &mut Criterion) {
    let q = klein_quadric(&VarSet::plucker()).unwrap();
    let f = cubic_form();
    c.bench_function("groebner_q_cubic", |b| {
        b.iter(|| {
            let ideal =
                IdealBasis::new(vec![q.clone(), f.clone()], MonomialOrder::GrevLex).unwrap();
            ideal.groebner_basis().unwrap().len()
        })
    });
}

fn bench_honest_test(c: &mut Criterion) {
    let f = quadric_form();
    c.bench_function("honest_test_quadric", |b| {
        b.iter(|| honest_test(black_box(&f)).unwrap().honest)
    });
}

fn bench_chow_pipeline(c: &mut Criterion) {
    let curve = twisted_cubic_curve();
    let mut group = c.benchmark_group("elimination");
    group.sample_size(10);
    group.bench_function("chow_form_twisted_cubic", |b| {
        b.iter(|| chow_form_of_curve(black_box(&curve)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_bracket,
    bench_decompose,
    bench_canonical_rep,
    bench_groebner,
    bench_honest_test,
    bench_chow_pipeline
);
criterion_main!(benches);
