use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use uhecke_bench::half_sigma;
use uhecke_bench::uhecke::doubling::{gk_constant, zeta_minus_via_gk, zeta_value, DoublingContext, GkForm, SatakeParams};
use uhecke_bench::uhecke::hecke::{eigenvector, idempotent};
use uhecke_bench::uhecke::weilrep::{calibrate_finite_weil, verify_generator_lemma};
use uhecke_bench::uhecke::Sign;

fn hecke(c: &mut Criterion) {
    let mut g = c.benchmark_group("hecke");
    g.sample_size(10);
    g.bench_function("eigenvector_r3_minus", |b| b.iter(|| eigenvector(black_box(3), Sign::Minus).unwrap()));
    g.bench_function("idempotent_r2_plus", |b| b.iter(|| idempotent(black_box(2), Sign::Plus).unwrap()));
    g.finish();
}

fn doubling(c: &mut Criterion) {
    let ctx4 = DoublingContext::new(4, Sign::Minus).unwrap();
    c.bench_function("gk_product_r4", |b| b.iter(|| gk_constant(black_box(&ctx4), GkForm::Product)));

    let ctx3 = DoublingContext::new(3, Sign::Minus).unwrap();
    let sym = SatakeParams::symbolic(3);
    c.bench_function("zeta_minus_closed_r3", |b| b.iter(|| zeta_value(black_box(&ctx3), &sym).unwrap()));
    c.bench_function("zeta_minus_via_gk_r3", |b| b.iter(|| zeta_minus_via_gk(3, black_box(&sym)).unwrap()));
    let half = half_sigma(3);
    c.bench_function("zeta_minus_half_r3", |b| b.iter(|| zeta_value(black_box(&ctx3), &half).unwrap()));
}

fn weil(c: &mut Criterion) {
    let mut g = c.benchmark_group("weil");
    g.sample_size(10);
    g.bench_function("generator_lemma_p3_minus", |b| b.iter(|| verify_generator_lemma(black_box(3), 1, Sign::Minus).unwrap()));
    g.bench_function("calibrate_p3", |b| b.iter(|| calibrate_finite_weil(black_box(3)).unwrap()));
    g.finish();
}

criterion_group!(benches, hecke, doubling, weil);
criterion_main!(benches);
