use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilmat::congruence::select_modulus;
use nilmat::splitting::jordan;
use nilmat::testkit::{closure, corpus_rational, gen_max_abs_irr_nilpotent, random_jordan_case};
use nilmat::{is_finite_nilpotent, is_nilpotent, Field, Options};

fn finite_fields(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_finite_nilpotent");
    for (n, p, l) in [(2, 5, 1), (3, 7, 1), (4, 5, 1), (6, 13, 1)] {
        let g = gen_max_abs_irr_nilpotent(n, p, l).unwrap();
        let opts = Options::default();
        group.bench_with_input(BenchmarkId::new("max_nilpotent", format!("{n}_{p}^{l}")), &g, |b, g| {
            b.iter(|| is_finite_nilpotent(black_box(g), &opts).unwrap())
        });
    }
    group.finish();
}

fn rationals(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_nilpotent_q");
    group.sample_size(20);
    let opts = Options::default();
    for e in corpus_rational().into_iter().filter(|e| ["d8", "heisenberg", "diag3_swap"].contains(&e.name.as_str())) {
        group.bench_with_input(BenchmarkId::from_parameter(&e.name), &e.group, |b, g| {
            b.iter(|| is_nilpotent(black_box(g), &opts).unwrap())
        });
    }
    group.finish();
}

fn primitives(c: &mut Criterion) {
    let f = Field::Rationals;
    let (g, _) = random_jordan_case(&f, 5, 7);
    c.bench_function("jordan_q_5x5", |b| b.iter(|| jordan(black_box(&g), &f).unwrap()));

    let heis = corpus_rational().into_iter().find(|e| e.name == "heisenberg").unwrap().group;
    let policy = Options::default().policy;
    c.bench_function("select_modulus_heisenberg", |b| b.iter(|| select_modulus(black_box(&heis), &policy).unwrap()));

    let g = gen_max_abs_irr_nilpotent(3, 7, 1).unwrap();
    c.bench_function("closure_162", |b| b.iter(|| closure(black_box(&g.gens), g.dim, &g.field, 10_000)));
}

criterion_group!(benches, finite_fields, rationals, primitives);
criterion_main!(benches);
