use criterion::{criterion_group, criterion_main, Criterion};
use slopekit::construction::{offset_sync, square_forcing, CRules, DEFAULT_BAND_BUDGET};
use slopekit::machine::corpus;
use slopekit::tm_tiles::{compile_tm, rectangle_tileable_with, RectangleInstance, DEFAULT_STEP_BUDGET};

fn bands(c: &mut Criterion) {
    c.bench_function("square forcing spacing 4", |b| {
        b.iter(|| square_forcing(CRules::All, 4, DEFAULT_BAND_BUDGET).unwrap())
    });
    c.bench_function("offset sync spacing 5", |b| {
        b.iter(|| offset_sync(5, &[2, 3], DEFAULT_BAND_BUDGET).unwrap())
    });
}

fn rectangles(c: &mut Criterion) {
    let tm = corpus::parity();
    let set = compile_tm(&tm);
    let inst = RectangleInstance::for_bounds(4, 8, tm.word("111").unwrap()).unwrap();
    c.bench_function("parity rectangle 4x8", |b| {
        b.iter(|| rectangle_tileable_with(&set, &inst, DEFAULT_STEP_BUDGET).unwrap())
    });
}

criterion_group!(benches, bands, rectangles);
criterion_main!(benches);
