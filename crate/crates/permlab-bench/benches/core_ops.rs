use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use permlab_core::bijections::{gamma, theta, theta_composed};
use permlab_core::dist::{catalan_qp_table, cfrac_series, distribution, CfracSpec, Stat};
use permlab_core::patterns::enumerate_avoiders;
use permlab_core::perm::Permutation;
use permlab_core::stats::statistics;

fn pattern(text: &str) -> Permutation {
    text.parse().unwrap()
}

fn bench_enumeration(c: &mut Criterion) {
    let p321 = [pattern("321")];
    c.bench_function("enumerate S_8(321)", |b| {
        b.iter(|| enumerate_avoiders(black_box(8), &p321).count())
    });
    c.bench_function("enumerate S_7", |b| {
        b.iter(|| enumerate_avoiders(black_box(7), &[]).count())
    });
}

fn bench_statistics(c: &mut Criterion) {
    let perms: Vec<Permutation> = enumerate_avoiders(8, &[]).take(5000).collect();
    c.bench_function("statistics over 5000 perms of S_8", |b| {
        b.iter(|| {
            perms
                .iter()
                .map(|p| statistics(p).crs)
                .sum::<usize>()
        })
    });
}

fn bench_bijections(c: &mut Criterion) {
    let avoiders: Vec<Permutation> = enumerate_avoiders(7, &[pattern("321")]).collect();
    c.bench_function("theta recursion over S_7(321)", |b| {
        b.iter_batched(
            || avoiders.clone(),
            |input| input.iter().map(|s| theta(s).unwrap().len()).sum::<usize>(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("theta composition over S_7(321)", |b| {
        b.iter_batched(
            || avoiders.clone(),
            |input| {
                input
                    .iter()
                    .map(|s| theta_composed(s).unwrap().len())
                    .sum::<usize>()
            },
            BatchSize::SmallInput,
        )
    });
    c.bench_function("gamma over S_7(321)", |b| {
        b.iter_batched(
            || avoiders.clone(),
            |input| input.iter().map(|s| gamma(s).unwrap().len()).sum::<usize>(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_polynomials(c: &mut Criterion) {
    c.bench_function("catalan_qp table to n=12", |b| {
        b.iter(|| catalan_qp_table(black_box(12)).len())
    });
    c.bench_function("qp continued fraction to z^12", |b| {
        b.iter(|| cfrac_series(&CfracSpec::qp_catalan(), black_box(12)).len())
    });
    c.bench_function("crs/nes distribution over S_7", |b| {
        b.iter(|| distribution(black_box(7), &[], &[Stat::Crs, Stat::Nes]).term_count())
    });
}

criterion_group!(
    benches,
    bench_enumeration,
    bench_statistics,
    bench_bijections,
    bench_polynomials
);
criterion_main!(benches);
