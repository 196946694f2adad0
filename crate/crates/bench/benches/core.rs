use criterion::{black_box, criterion_group, criterion_main, Criterion};

use tcrcalc::abelian::{smith_normal_form, IntMatrix};
use tcrcalc::barcalc::{components, GroupSpec};
use tcrcalc::ringkit::{parse_ring, FinRing, ProRing};
use tcrcalc::tcr::{tcr_phi_torsionfree, trr_phi_oracle, trr_phi_tower};
use tcrcalc::witt::WittRing;
use tcrcalc::Ctx;

fn snf(c: &mut Criterion) {
    let rows: Vec<Vec<i64>> = (0..12)
        .map(|i| (0..12).map(|j| ((i * 7 + j * 13 + i * j) % 23) as i64 - 11).collect())
        .collect();
    let m = IntMatrix::from_rows(&rows);
    c.bench_function("smith normal form 12x12", |b| {
        b.iter(|| smith_normal_form(black_box(&m)))
    });
}

fn witt_mul(c: &mut Criterion) {
    let ctx = Ctx::default();
    let k = parse_ring("GF(2,x^2+x+1)").unwrap().ring;
    let w = WittRing::new(k, 2, 3, &ctx).unwrap();
    let el = FinRing::Witt(w.clone()).elements(&ctx).unwrap();
    c.bench_function("W_3(F_4) all products", |b| {
        b.iter(|| {
            for x in &el {
                for y in &el {
                    black_box(w.mul(x, y));
                }
            }
        })
    });
}

fn tower(c: &mut Criterion) {
    let ctx = Ctx::default();
    let k = parse_ring("GF(2,x^2+x+1)").unwrap().ring;
    c.bench_function("tower F_4 level 3", |b| {
        b.iter(|| trr_phi_tower(&k, 3, (0, 6), &ctx).unwrap())
    });
    c.bench_function("tower oracle F_4 level 3", |b| {
        b.iter(|| trr_phi_oracle(&k, 3, (0, 6), &ctx).unwrap())
    });
}

fn torsionfree(c: &mut Criterion) {
    let ctx = Ctx::default();
    let z = ProRing::parse("Z").unwrap();
    c.bench_function("TCR of Z, window -2:9", |b| {
        b.iter(|| tcr_phi_torsionfree(&z, (-2, 9), &ctx).unwrap())
    });
}

fn bar(c: &mut Criterion) {
    let ctx = Ctx::default();
    let m = GroupSpec::parse("D4 with inv").unwrap().finite(&ctx).unwrap();
    c.bench_function("components D4 with inv", |b| b.iter(|| components(&m, &ctx).unwrap()));
}

criterion_group!(benches, snf, witt_mul, tower, torsionfree, bar);
criterion_main!(benches);
