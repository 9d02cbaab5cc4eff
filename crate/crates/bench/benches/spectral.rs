use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use specball::bounds::{check_theorem1, check_theorem2};
use specball::campaign::{run_campaign, CampaignConfig, CampaignKind};
use specball::extremal::{example_fd, sample_sn};
use specball::hyperbolic::{blaschke_matrix, BlaschkeProduct};
use specball::linalg::eigenvalues;
use specball::maps::sampling::{matrix_with_radius, trial_rng};
use specball::maps::{sample_disc_map, sample_self_map};
use specball::spectrum::{analyze, DEFAULT_MINPOLY_TOL};

const DIMS: [usize; 3] = [3, 6, 10];

fn spectral(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectral");
    for n in DIMS {
        let generic = matrix_with_radius(n, 0.8, &mut trial_rng(1, n as u64)).unwrap();
        let defective = example_fd(n, n - 1, Complex64::new(0.3, 0.2)).unwrap().matrix;
        g.bench_with_input(BenchmarkId::new("eigenvalues", n), &generic, |b, a| {
            b.iter(|| eigenvalues(black_box(a)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("analyze_generic", n), &generic, |b, a| {
            b.iter(|| analyze(black_box(a), DEFAULT_MINPOLY_TOL).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("analyze_defective", n), &defective, |b, a| {
            b.iter(|| analyze(black_box(a), DEFAULT_MINPOLY_TOL).unwrap())
        });
    }
    g.finish();
}

fn maps(c: &mut Criterion) {
    let mut g = c.benchmark_group("maps");
    let blaschke = BlaschkeProduct::from_pairs(&[
        (Complex64::new(0.2, 0.1), 2),
        (Complex64::new(-0.5, 0.3), 1),
        (Complex64::new(0.0, -0.7), 1),
    ])
    .unwrap();
    for n in DIMS {
        let a = sample_sn(n, 3).unwrap();
        g.bench_with_input(BenchmarkId::new("blaschke_matrix", n), &a, |b, a| {
            b.iter(|| blaschke_matrix(&blaschke, black_box(a)).unwrap())
        });
    }
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    for n in DIMS {
        let f = sample_disc_map(n, 3, 0.9, 5).unwrap();
        let (z1, z2) = (Complex64::new(0.1, -0.4), Complex64::new(-0.6, 0.2));
        g.bench_function(BenchmarkId::new("theorem1", n), |b| {
            b.iter(|| check_theorem1(black_box(&f), z1, z2).unwrap())
        });
        let map = sample_self_map(n, 2, 5).unwrap();
        let x = sample_sn(n, 6).unwrap();
        g.bench_function(BenchmarkId::new("theorem2", n), |b| {
            b.iter(|| check_theorem2(black_box(&map), black_box(&x)).unwrap())
        });
    }
    g.finish();
}

fn campaigns(c: &mut Criterion) {
    let mut g = c.benchmark_group("campaign");
    g.sample_size(10);
    for kind in [CampaignKind::Thm1, CampaignKind::Thm2] {
        let mut cfg = CampaignConfig::new(kind);
        cfg.n = Some(4);
        cfg.trials = 20;
        g.bench_function(format!("{kind:?}_20_trials"), |b| b.iter(|| run_campaign(black_box(&cfg)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, spectral, maps, checks, campaigns);
criterion_main!(benches);
