use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use idemsum::invariants::enumerate_zero_sum_free;
use idemsum::smoothness::max_signed_smooth_sub_length;
use idemsum::verify::{verify_main_bound, verify_theorem_a, Sweep};
use idemsum_bench::spread_residues;

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    let single = Sweep::with_jobs(1);
    group.bench_function("main_bound_k3_n4_len7", |b| {
        b.iter(|| verify_main_bound(3, 4, 7, black_box(&single)).unwrap())
    });
    group.bench_function("theorem_a_n7", |b| b.iter(|| verify_theorem_a(7, black_box(&single)).unwrap()));
    group.bench_function("zero_sum_free_n13", |b| {
        b.iter(|| enumerate_zero_sum_free(black_box(13)).unwrap().count())
    });
    group.finish();
}

fn longest_signed(c: &mut Criterion) {
    let t = spread_residues(11, 9);
    c.bench_function("max_signed_smooth_n11_len9", |b| {
        b.iter(|| max_signed_smooth_sub_length(black_box(&t)).unwrap())
    });
}

criterion_group!(benches, sweeps, longest_signed);
criterion_main!(benches);
