use criterion::{criterion_group, criterion_main, Criterion};
use slopekit::fixtures::yb;
use slopekit::periodicity::{build_strip_graph, decide_periodic, Budget};
use slopekit::slopes::{enumerate_slopes, SlopeLimits};
use slopekit::PeriodVector;
use std::hint::black_box;

fn strip_graph(c: &mut Criterion) {
    let sys = yb();
    for (p, q) in [(1, 0), (2, 1), (3, 2)] {
        let v = PeriodVector::new(p, q).unwrap();
        c.bench_function(&format!("yb strip graph ({p},{q})"), |b| {
            b.iter(|| build_strip_graph(black_box(&sys), v).unwrap())
        });
        c.bench_function(&format!("yb decide ({p},{q})"), |b| {
            b.iter(|| decide_periodic(black_box(&sys), v).unwrap())
        });
    }
    let limits = SlopeLimits {
        slope_bound: 2,
        max_multiple: 2,
        node_budget: Budget::DEFAULT_NODES,
    };
    c.bench_function("yb slopes bound 2", |b| b.iter(|| enumerate_slopes(black_box(&sys), limits)));
}

criterion_group!(benches, strip_graph);
criterion_main!(benches);
