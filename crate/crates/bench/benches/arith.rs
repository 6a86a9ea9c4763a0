use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dquad_core::exactnum::{could_be_square, int_square_root_exact, isqrt};
use dquad_core::{check_dn, rat, CurveK, Int, Quad};
use num_bigint::BigInt;
use std::hint::black_box;

fn bench_isqrt(c: &mut Criterion) {
    let mut group = c.benchmark_group("isqrt");
    for digits in [20u32, 80, 320] {
        let n: Int = BigInt::from(10).pow(digits) + 12345;
        group.bench_with_input(BenchmarkId::from_parameter(digits), &n, |b, n| b.iter(|| isqrt(black_box(n))));
    }
    group.finish();
}

fn bench_square_test(c: &mut Criterion) {
    let square: Int = "30185892484109116209".parse().unwrap();
    let non_square = &square + 2;
    c.bench_function("exact_root/square", |b| b.iter(|| int_square_root_exact(black_box(&square))));
    c.bench_function("exact_root/non_square", |b| b.iter(|| int_square_root_exact(black_box(&non_square))));
    c.bench_function("residue_filter", |b| b.iter(|| could_be_square(black_box(&non_square))));
}

fn bench_dn(c: &mut Criterion) {
    let q = Quad::from_i64([1066758050, 7214407200, 8024417928, 44219811272]).unwrap();
    let n: Int = "90467582183447040000".parse().unwrap();
    c.bench_function("check_dn/k3", |b| b.iter(|| check_dn(black_box(&q), black_box(&n))));
}

fn bench_group_law(c: &mut Criterion) {
    let curve = CurveK::new(rat(7, 3)).unwrap();
    let p = curve.point_p();
    c.bench_function("curve/mul7", |b| b.iter(|| curve.mul(black_box(7), black_box(&p))));
}

criterion_group!(benches, bench_isqrt, bench_square_test, bench_dn, bench_group_law);
criterion_main!(benches);
