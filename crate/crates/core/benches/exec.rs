use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use subshift::agler::{certified_epsilon_with, certify_sum_with, sweep_csv};
use subshift::lubin::{self, LubinFamily};
use subshift::numerics::rat;
use subshift::shift1d::agler_sums_1d_with;
use subshift::shift2d::{check_berger_2d_with, commutativity_check_with, Window};
use subshift::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn certificate(c: &mut Criterion) {
    let mut g = c.benchmark_group("certificate");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("certified_epsilon", name), |b| {
            b.iter(|| certified_epsilon_with(black_box(exec)))
        });
        g.bench_function(BenchmarkId::new("certify_sum_1_5", name), |b| {
            b.iter(|| certify_sum_with(exec, black_box(&rat(1, 5))))
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("x_grid_20_n_40_k_5", name), |b| {
            b.iter(|| sweep_csv(exec, &rat(1, 20), &rat(1, 1), &rat(1, 20), black_box(40), 5))
        });
    }
    g.finish();
}

fn windows(c: &mut Criterion) {
    let mut g = c.benchmark_group("windows");
    let mu = lubin::mu_m();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("commutativity_24x24", name), |b| {
            // fresh diagram each run so the weight caches start cold
            b.iter(|| {
                let d = LubinFamily::new(rat(1, 5)).unwrap().diagram();
                commutativity_check_with(exec, &d, Window::square(24))
            })
        });
        g.bench_function(BenchmarkId::new("berger_mu_m_16x16", name), |b| {
            b.iter(|| {
                let d = LubinFamily::new(rat(1, 5)).unwrap().diagram().restrict((0, 1));
                check_berger_2d_with(exec, &d, &mu, Window::square(16))
            })
        });
        g.bench_function(BenchmarkId::new("agler_1d_a_n40_k20", name), |b| {
            b.iter(|| agler_sums_1d_with(exec, &lubin::weights_a(), black_box(40), 20))
        });
    }
    g.finish();
}

criterion_group!(benches, certificate, sweep, windows);
criterion_main!(benches);
