use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use knotoid::{compute_h, random_diagram, random_walk, MoveKind, ReductionPolicy};

fn compute(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_h");
    for k in [10usize, 100, 1000] {
        let d = random_diagram(k, 1);
        group.throughput(Throughput::Elements(k as u64));
        for policy in [ReductionPolicy::Quotient, ReductionPolicy::Literal] {
            group.bench_with_input(BenchmarkId::new(policy.to_string(), k), &d, |b, d| {
                b.iter(|| compute_h(black_box(d), policy).unwrap())
            });
        }
    }
    group.finish();
}

fn walk(c: &mut Criterion) {
    let d = random_diagram(20, 2);
    c.bench_function("random_walk_100", |b| {
        b.iter(|| random_walk(black_box(&d), 100, 3, &MoveKind::ALL))
    });
}

criterion_group!(benches, compute, walk);
criterion_main!(benches);
