use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use origon_bench::{asymmetric, critical_division, cube, mixed_division, tilted};
use origon_core::conventional::{build_conventional, BuildOptions};
use origon_core::division::build_division;
use origon_core::fold::{from_fold, to_fold};
use origon_core::improved::{build_improved_with, ImprovedOptions, TonguePlacement};
use origon_core::interference::optimize_prism;
use origon_core::validator::kawasaki_check;
use origon_core::Tolerance;

fn constructions(c: &mut Criterion) {
    let tol = Tolerance::default();
    c.bench_function("conventional cube", |b| {
        b.iter(|| build_conventional(black_box(&cube()), BuildOptions::default(), &tol).unwrap())
    });
    c.bench_function("improved tilted critical", |b| {
        b.iter(|| {
            build_improved_with(black_box(&tilted()), TonguePlacement::LeftCritical, ImprovedOptions::default(), &tol)
                .unwrap()
        })
    });
    let (mixed, critical) = (mixed_division(), critical_division());
    c.bench_function("division three levels mixed", |b| {
        b.iter(|| build_division(black_box(&asymmetric()), &mixed, &tol).unwrap())
    });
    c.bench_function("division three levels critical", |b| {
        b.iter(|| build_division(black_box(&asymmetric()), &critical, &tol).unwrap())
    });
}

fn checks(c: &mut Criterion) {
    let tol = Tolerance::default();
    let cp = build_division(&asymmetric(), &mixed_division(), &tol).unwrap().pattern;
    c.bench_function("kawasaki division", |b| b.iter(|| kawasaki_check(black_box(&cp), &tol).unwrap()));
    let text = to_fold(&cp);
    c.bench_function("fold write", |b| b.iter(|| to_fold(black_box(&cp))));
    c.bench_function("fold read", |b| b.iter(|| from_fold(black_box(&text)).unwrap()));
    c.bench_function("prism table", |b| b.iter(|| [3, 4, 5, 6, 8, 12].map(|n| optimize_prism(black_box(n)).unwrap())));
}

criterion_group!(benches, constructions, checks);
criterion_main!(benches);
