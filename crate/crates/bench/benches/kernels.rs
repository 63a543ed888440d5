use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use rustfft::FftDirection;

use mkg_core::dynamics::{evolve, step, EvolveConfig, RhsForm};
use mkg_core::estimates::{bilinear_ratio_fuzz, BilinearTarget, ExponentTuple, FuzzConfig};
use mkg_core::io::RunConfig;
use mkg_core::norms::{xsb_norm, SpaceTimeField, TimeWindow, XsbSpec};
use mkg_core::spectral::fft::fft2;
use mkg_core::spectral::random::random_field;
use mkg_core::spectral::GridSpec;

fn fft(c: &mut Criterion) {
    let mut g = c.benchmark_group("fft2");
    for n in [64usize, 128, 256] {
        let mut data: Vec<Complex64> = (0..n * n).map(|i| Complex64::new((i as f64).sin(), 0.0)).collect();
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| {
                fft2(&mut data, n, n, FftDirection::Forward);
                fft2(black_box(&mut data), n, n, FftDirection::Inverse);
            })
        });
    }
    g.finish();
}

fn time_step(c: &mut Criterion) {
    let mut g = c.benchmark_group("step");
    for n in [64usize, 128] {
        let state = RunConfig::parse(&format!("n = {n}\n")).unwrap().initial_state().unwrap();
        for form in [RhsForm::Direct, RhsForm::Nullform] {
            let cfg = EvolveConfig {
                dt: 1e-3,
                rhs_form: form,
                ..EvolveConfig::default()
            };
            g.bench_function(BenchmarkId::new(format!("{form:?}"), n), |b| {
                b.iter(|| step(black_box(&state), &cfg).unwrap())
            });
        }
    }
    g.finish();
}

fn ten_steps(c: &mut Criterion) {
    let state = RunConfig::parse("n = 64\n").unwrap().initial_state().unwrap();
    let cfg = EvolveConfig {
        dt: 1e-3,
        t_end: 1e-2,
        diag_stride: usize::MAX,
        snapshot_stride: usize::MAX,
        ..EvolveConfig::default()
    };
    c.bench_function("evolve_10_steps_64", |b| b.iter(|| evolve(black_box(&state), &cfg).unwrap()));
}

fn xsb(c: &mut Criterion) {
    let g = GridSpec::square(64).unwrap();
    let u0 = random_field(g, 20, 1, false);
    let f = SpaceTimeField::from_fn(g, 64, 6.0, TimeWindow::RaisedCosine, |t| &u0 * (1.0 + t)).unwrap();
    let spec = XsbSpec::wave(0.5, 0.51);
    c.bench_function("xsb_norm_64x64x64", |b| b.iter(|| xsb_norm(black_box(&f), &spec)));
}

fn fuzz_trial(c: &mut Criterion) {
    let e = ExponentTuple::new([0.0, 0.5, 0.5], [0.0, 0.51, 0.51]);
    let cfg = FuzzConfig {
        n: 32,
        nt: 32,
        n_trials: 1,
        ..FuzzConfig::default()
    };
    c.bench_function("fuzz_trial_product_32", |b| {
        b.iter(|| bilinear_ratio_fuzz(BilinearTarget::Product, black_box(&e), &cfg).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = fft, time_step, ten_steps, xsb, fuzz_trial
}
criterion_main!(benches);
