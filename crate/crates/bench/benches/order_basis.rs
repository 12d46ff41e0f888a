use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use popov_bench::order_basis_workload;
use popov_core::{popov_order_basis_with, Strategy};
use std::hint::black_box;

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("order_basis");
    group.sample_size(10);
    for order in [128, 512, 2048] {
        let w = order_basis_workload(8, 2, order, 7);
        let total = 2 * order;
        for (name, strategy) in [
            ("iterative", Strategy::Iterative),
            ("divide_and_conquer", Strategy::Auto),
        ] {
            group.bench_with_input(BenchmarkId::new(name, total), &w, |b, w| {
                b.iter(|| {
                    popov_order_basis_with(black_box(&w.f), &w.tau, &w.shift, strategy).unwrap()
                })
            });
        }
    }
    group.finish();
}

fn thresholds(c: &mut Criterion) {
    let mut group = c.benchmark_group("order_basis_threshold");
    group.sample_size(10);
    let w = order_basis_workload(8, 2, 1024, 11);
    for threshold in [16, 64, 256] {
        group.bench_with_input(BenchmarkId::from_parameter(threshold), &w, |b, w| {
            b.iter(|| {
                let strategy = Strategy::DivideAndConquer { threshold };
                popov_order_basis_with(black_box(&w.f), &w.tau, &w.shift, strategy).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, engines, thresholds);
criterion_main!(benches);
