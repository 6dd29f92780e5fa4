//! Hot paths of the series kernel: Pochhammer expansion, the triple
//! product, PBW bodies, and the double-sum character.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use charkit_core::admissible::{fsst_character, AdmissibleLabel};
use charkit_core::charlib::{relaxed_verma, theta, verma_n2, LevelContext, ThetaForm};
use charkit_core::rat::Rat;
use charkit_core::series::{pochhammer, Monomial, Rect, Window};

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn euler_product(c: &mut Criterion) {
    let rect = Rect::new(r(0), r(40), vec![Window::point(r(0))]);
    let q = Monomial::q_power(r(1), 1);
    c.bench_function("euler_product_q40", |b| {
        b.iter(|| pochhammer(black_box(&q), &r(1), black_box(&rect), true).unwrap())
    });
}

fn triple_product(c: &mut Criterion) {
    let rect = Rect::new(r(0), r(20), vec![Window::symmetric(20)]);
    c.bench_function("theta_product_q20_w20", |b| {
        b.iter(|| theta(black_box(&rect), ThetaForm::Product).unwrap())
    });
}

fn pbw_bodies(c: &mut Criterion) {
    let ctx = LevelContext::new(r(1)).unwrap();
    let rect = Rect::new(r(0), r(12), vec![Window::symmetric(6)]);
    c.bench_function("n2_verma_body_q12_w6", |b| {
        b.iter(|| verma_n2(black_box(&ctx), &r(0), &r(0), black_box(&rect)).unwrap())
    });
    c.bench_function("relaxed_verma_body_q12_w6", |b| {
        b.iter(|| relaxed_verma(black_box(&ctx), &r(0), &r(0), black_box(&rect)).unwrap())
    });
}

fn series_mul(c: &mut Criterion) {
    let rect = Rect::new(r(0), r(10), vec![Window::symmetric(5)]);
    let ctx = LevelContext::new(r(1)).unwrap();
    let a = relaxed_verma(&ctx, &r(0), &r(0), &rect).unwrap().body().clone();
    let b = verma_n2(&ctx, &r(0), &r(0), &rect).unwrap().body().clone();
    c.bench_function("mul_dense_q10_w5", |bch| {
        bch.iter(|| black_box(&a).mul(black_box(&b)).unwrap())
    });
}

fn double_sum(c: &mut Criterion) {
    let label = AdmissibleLabel::new(3, 1, 1, 0).unwrap();
    let rect = Rect::new(r(0), r(8), vec![Window::symmetric(5)]);
    c.bench_function("fsst_character_q8_w5", |b| {
        b.iter(|| fsst_character(black_box(&label), black_box(&rect)).unwrap())
    });
}

criterion_group!(
    benches,
    euler_product,
    triple_product,
    pbw_bodies,
    series_mul,
    double_sum
);
criterion_main!(benches);
