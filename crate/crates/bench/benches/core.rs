use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kink_core::dispersion::imaginary_roots;
use kink_core::inverse::inverse_params;
use kink_core::lattice::simulate_exact_kink;
use kink_core::shooting::{scan, sigma_grid, split_k, ShootingConfig};
use kink_core::stokes::b_sequence;
use kink_core::Nonlinearity;

fn shooting(c: &mut Criterion) {
    let cfg = ShootingConfig::new(5.0);
    c.bench_function("split_k phi4 sigma=5", |b| {
        b.iter(|| split_k(black_box(&cfg), &Nonlinearity::Phi4))
    });
    let grid = sigma_grid(2.5, 8.0, 0.1).unwrap();
    let mut group = c.benchmark_group("scan phi4 56 points");
    group.sample_size(10);
    for threads in [1, 4] {
        group.bench_function(format!("threads={threads}"), |b| {
            b.iter(|| scan(black_box(&grid), &cfg, &Nonlinearity::Phi4, threads))
        });
    }
    group.finish();
}

fn stokes(c: &mut Criterion) {
    c.bench_function("b_sequence 100", |b| b.iter(|| b_sequence(black_box(100))));
}

fn dispersion(c: &mut Criterion) {
    c.bench_function("imaginary_roots c=0.3 h=0.8 K<=50", |b| {
        b.iter(|| imaginary_roots(black_box(0.3), 0.8, 50.0))
    });
}

fn lattice(c: &mut Criterion) {
    let h = inverse_params(0.8, 0.5).unwrap().h();
    let mut group = c.benchmark_group("lattice");
    group.sample_size(10);
    group.bench_function("exact kink 400 sites dt=h/50", |b| {
        b.iter(|| simulate_exact_kink(0.8, 0.5, black_box(10.0 * h / 0.8), h / 50.0, 400))
    });
    group.finish();
}

criterion_group!(benches, shooting, stokes, dispersion, lattice);
criterion_main!(benches);
