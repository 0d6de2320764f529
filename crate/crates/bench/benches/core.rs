use criterion::{black_box, criterion_group, criterion_main, Criterion};
use planar_core::bipoly::BiPoly;
use planar_core::classify_m;
use planar_core::curve::{build_family, infinity_singularities, verify_table1};
use planar_core::factor::{bounded_factor_search, point_count};
use planar_core::gf::{FieldCtx, FieldTables};
use planar_core::pntest::{is_pn, Mode};

fn field(c: &mut Criterion) {
    let ctx = FieldCtx::new(3, 6).unwrap();
    let a = ctx.primitive_element();
    let b = ctx.from_index(400);
    c.bench_function("gf_mul_f3^6", |bch| {
        bch.iter(|| ctx.mul(black_box(a), black_box(b)))
    });
    c.bench_function("gf_inv_f3^6", |bch| {
        bch.iter(|| ctx.inv(black_box(b)).unwrap())
    });
    let t = FieldTables::new(&ctx).unwrap();
    c.bench_function("table_mul_f3^6", |bch| {
        bch.iter(|| t.mul(black_box(17), black_box(400)))
    });
}

fn poly(c: &mut Criterion) {
    let fam = build_family(3, 22).unwrap();
    let ctx = FieldCtx::new(3, 2).unwrap();
    let h: BiPoly = fam.h().embed_into(&ctx).unwrap();
    let x0 = ctx.generator_x();
    c.bench_function("taylor_shift_h_3_22", |bch| {
        bch.iter(|| h.taylor_shift(black_box(x0), black_box(x0)).unwrap())
    });
}

fn curves(c: &mut Criterion) {
    let fam = build_family(3, 13).unwrap();
    c.bench_function("infinity_singularities_3_13", |bch| {
        bch.iter(|| infinity_singularities(black_box(&fam)).unwrap())
    });
    c.bench_function("table_3_13_s2", |bch| {
        bch.iter(|| verify_table1(black_box(&fam), 2).unwrap())
    });
    c.bench_function("point_count_3_13_n8", |bch| {
        bch.iter(|| point_count(black_box(&fam), 8).unwrap())
    });
}

fn planarity(c: &mut Criterion) {
    c.bench_function("is_pn_3_8_14", |bch| {
        bch.iter(|| is_pn(3, 8, black_box(14), Mode::OnlyAEquals1).unwrap())
    });
    c.bench_function("is_pn_all_a_3_5_14", |bch| {
        bch.iter(|| is_pn(3, 5, black_box(14), Mode::AllNonzeroA).unwrap())
    });
    c.bench_function("classify_3_to_200", |bch| {
        bch.iter(|| {
            (4..200u64)
                .step_by(3)
                .map(|m| classify_m(3, m).unwrap())
                .count()
        })
    });
}

fn factoring(c: &mut Criterion) {
    let ctx = FieldCtx::new(3, 4).unwrap();
    let h = build_family(3, 10).unwrap().h().embed_into(&ctx).unwrap();
    c.bench_function("factor_gold_3_10_f81", |bch| {
        bch.iter(|| bounded_factor_search(black_box(&h), 1).unwrap())
    });
}

criterion_group!(benches, field, poly, curves, planarity, factoring);
criterion_main!(benches);
