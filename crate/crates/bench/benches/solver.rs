use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use evoderive_core::{build_system, derivation_space, EvolutionAlgebra, FieldSpec, Graph};

fn cases() -> Vec<(&'static str, Graph)> {
    vec![
        ("path-16", Graph::path(16).unwrap()),
        ("cycle-12", Graph::cycle(12).unwrap()),
        ("k-8-8", Graph::complete_bipartite(8, 8).unwrap()),
        ("complete-10", Graph::complete(10).unwrap()),
    ]
}

fn bench_derivation_space(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivation_space");
    group.sample_size(10);
    for (name, g) in cases() {
        for p in [0, 2, 3, 101] {
            let alg = EvolutionAlgebra::new(g.clone(), FieldSpec::new(p).unwrap());
            group.bench_with_input(BenchmarkId::new(name, p), &alg, |b, alg| {
                b.iter(|| derivation_space(black_box(alg)).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_dense_nullspace(c: &mut Criterion) {
    let mut group = c.benchmark_group("dense_nullspace");
    group.sample_size(10);
    for n in [4, 6, 8] {
        let alg = EvolutionAlgebra::new(Graph::cycle(n).unwrap(), FieldSpec::new(3).unwrap());
        let system = build_system(&alg);
        group.bench_with_input(BenchmarkId::from_parameter(n), &system, |b, m| {
            b.iter(|| black_box(m).nullspace())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_derivation_space, bench_dense_nullspace);
criterion_main!(benches);
