use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use markov_spherical::operators::{convergence_series, spherical_direct, spherical_series, System};
use markov_spherical_bench::zmod_benchmark;

fn spheres(c: &mut Criterion) {
    let (m, a, f) = zmod_benchmark(5);
    let nu = m.stationary_distribution().unwrap();
    let sys = System::new(&m, &nu, &a).unwrap();

    c.bench_function("spherical_series/exact/32", |b| {
        b.iter(|| spherical_series(&sys, black_box(&f)).unwrap().nth(31))
    });
    let g = f.to_f64();
    c.bench_function("spherical_series/float/100", |b| {
        b.iter(|| spherical_series(&sys, black_box(&g)).unwrap().nth(99))
    });
    c.bench_function("spherical_direct/6", |b| {
        b.iter(|| spherical_direct(&sys, black_box(&f), 6, 6).unwrap())
    });
    c.bench_function("convergence_series/z5/100", |b| {
        b.iter(|| convergence_series(&sys, black_box(&f), 1, 100, 32).unwrap())
    });
}

fn large_action(c: &mut Criterion) {
    let (m, a, f) = zmod_benchmark(101);
    let nu = m.stationary_distribution().unwrap();
    let sys = System::new(&m, &nu, &a).unwrap();
    let g = f.to_f64();
    c.bench_function("spherical_series/float/z101/200", |b| {
        b.iter(|| spherical_series(&sys, black_box(&g)).unwrap().nth(199))
    });
}

criterion_group!(benches, spheres, large_action);
criterion_main!(benches);
