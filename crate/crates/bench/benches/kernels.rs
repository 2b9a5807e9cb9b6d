use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::{BigInt, BigUint};

use galrep::arith::int::parse_int_expr;
use galrep::arith::{ModAlgebra, ZPoly};
use galrep::factor::factor_over_z;
use galrep::factor::finite::factor_mod_p;
use galrep::modforms::eigenform;
use galrep::resolvent::{build_table, BuildOptions};
use galrep_bench::load;

fn algebra(c: &mut Criterion) {
    let data = load("l11_delta");
    // p^K at the size used by the l = 11 table
    let m = num_traits::pow(BigInt::from(1_152_921_504_606_847_291u64), 28);
    let alg = ModAlgebra::new(&data.poly, &m).unwrap();
    let x = alg.pow_gen(&BigUint::from(0xdead_beef_u64));
    c.bench_function("alg_sqr_l11", |b| b.iter(|| alg.sqr(black_box(&x))));
    c.bench_function("alg_mul_l11", |b| b.iter(|| alg.mul(black_box(&x), black_box(&x))));
    let e = (BigUint::from(1u32) << 256u32) - 189u32;
    c.bench_function("alg_pow_gen_256bit", |b| b.iter(|| alg.pow_gen(black_box(&e))));
}

fn factoring(c: &mut Criterion) {
    let data = load("l11_delta");
    c.bench_function("factor_mod_p_l11", |b| b.iter(|| factor_mod_p(black_box(&data.poly), 1_000_003).unwrap()));
    let f = &(&ZPoly::from_ints(&[-2, 0, 1]) * &ZPoly::from_ints(&[1, 1, 1])) * &ZPoly::from_ints(&[3, -1, 0, 1]);
    c.bench_function("factor_over_z_deg7", |b| b.iter(|| factor_over_z(black_box(&f)).unwrap()));
}

fn queries(c: &mut Criterion) {
    let data = load("l11_delta");
    let (tab, _) = build_table(&data, &BuildOptions::default()).unwrap();
    let v = parse_int_expr("10^100+267").unwrap();
    let mut g = c.benchmark_group("query");
    g.sample_size(10);
    g.bench_function("a_p_l11_10e100", |b| b.iter(|| tab.a_p(black_box(&v)).unwrap()));
    g.finish();
}

fn qexp(c: &mut Criterion) {
    c.bench_function("eigenform_k12_2000", |b| b.iter(|| eigenform(12, black_box(2000)).unwrap()));
}

criterion_group!(benches, algebra, factoring, queries, qexp);
criterion_main!(benches);
