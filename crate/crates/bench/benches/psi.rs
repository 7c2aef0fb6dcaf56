use std::hint::black_box;

use abelian_psi::verify::check_injectivity_up_to;
use abelian_psi::{
    canonicalize, check_theorem_c, factored_compare, partitions_of, psi_all, psi_prime,
    psi_prime_pgroup, FactoredInteger, PGroupType,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("partitions_of");
    for n in [20u32, 40] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| partitions_of(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn psi_prime_exponents(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi_prime_pgroup");
    for (p, alphas) in [(2u64, vec![1u32, 3, 5, 11]), (3, vec![2, 2, 30]), (2, vec![200])] {
        let name = format!("p={p},alphas={alphas:?}");
        let g = PGroupType::new(p, alphas).unwrap();
        group.bench_function(name, |b| b.iter(|| psi_prime_pgroup(black_box(&g))));
    }
    group.finish();

    let g = canonicalize(&[720, 360, 12]).unwrap();
    c.bench_function("psi_prime/Z720xZ360xZ12", |b| b.iter(|| psi_prime(black_box(&g))));
}

fn theorem_c_sweep(c: &mut Criterion) {
    c.bench_function("check_theorem_c/p=2,n=30", |b| {
        b.iter(|| check_theorem_c(2, black_box(30)).unwrap())
    });
}

fn symmetric(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi_all");
    for order in [96u64, 512] {
        let g = canonicalize(&[order / 2, 2]).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(order), &g, |b, g| {
            b.iter(|| psi_all(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn comparison(c: &mut Criterion) {
    let a = psi_prime(&canonicalize(&[1 << 20, 3]).unwrap());
    let b = psi_prime(&canonicalize(&[3u64.pow(12), 2]).unwrap());
    c.bench_function("factored_compare/mixed_support", |bench| {
        bench.iter(|| factored_compare(black_box(&a), black_box(&b)))
    });
    let x = FactoredInteger::one();
    c.bench_function("factored_compare/one_sided", |bench| {
        bench.iter(|| factored_compare(black_box(&x), black_box(&a)))
    });
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    group.bench_function("injectivity/1000", |b| {
        b.iter(|| check_injectivity_up_to(black_box(1000)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    partitions,
    psi_prime_exponents,
    theorem_c_sweep,
    symmetric,
    comparison,
    sweeps
);
criterion_main!(benches);
