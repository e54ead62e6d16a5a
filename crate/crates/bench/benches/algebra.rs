use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use detspace_bench::{cubic_norm_example, field, field_space, skew};
use detspace_core::detkit::{char_poly, det_poly, norm_form_witness, pfaffian};
use detspace_core::theorems::normalizer_quotient;
use detspace_core::{Config, Field, Ring};

fn symbolic(c: &mut Criterion) {
    let mut g = c.benchmark_group("symbolic");
    for n in [4usize, 6] {
        let s = skew(3, n).unwrap();
        g.bench_with_input(BenchmarkId::new("det_poly_skew", n), &s, |b, s| b.iter(|| det_poly(s).unwrap()));
        g.bench_with_input(BenchmarkId::new("pfaffian_skew", n), &s, |b, s| b.iter(|| pfaffian(s).unwrap()));
    }
    let fs = field_space(3, 5).unwrap();
    g.bench_function("det_poly_field_3_5", |b| b.iter(|| det_poly(&fs).unwrap()));
    g.finish();
}

fn forms(c: &mut Criterion) {
    let cfg = Config::default();
    let p = det_poly(&cubic_norm_example().unwrap()).unwrap();
    c.bench_function("norm_form_witness_ex3", |b| b.iter(|| norm_form_witness(&p, 3, &cfg).unwrap()));
    let sq = p.mul(&p).unwrap();
    c.bench_function("sqrt_ex3_squared", |b| b.iter(|| sq.sqrt()));
}

fn scalar_work(c: &mut Criterion) {
    let f = field(1 << 10);
    let m = detspace_core::matrix::Matrix::from_rows(
        (0..8u64).map(|i| (0..8u64).map(|j| f.element((i * 37 + j * 101 + i * j) % 1024)).collect()).collect(),
    )
    .unwrap();
    c.bench_function("char_poly_8x8_f1024", |b| b.iter(|| char_poly(&f, &m).unwrap()));
    let x = f.element(777);
    c.bench_function("field_pow_f1024", |b| b.iter(|| f.pow(&x, 1_000_003)));
    c.bench_function("field_inv_f1024", |b| b.iter(|| f.inv(&f.add(&x, &f.one()))));
    let fs = field_space(2, 3).unwrap();
    c.bench_function("normalizer_field_2_3", |b| b.iter(|| normalizer_quotient(&fs, &Config::default()).unwrap()));
}

criterion_group!(benches, symbolic, forms, scalar_work);
criterion_main!(benches);
