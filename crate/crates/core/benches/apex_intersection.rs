use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hyperturan_core::bitset::{and_count, and_into};
use hyperturan_core::deletion::random_hypergraph;
use hyperturan_core::verifier::{build_shadow_links, find_bipartite_violation};
use rand::Rng;

fn words(len: usize, seed: u64) -> Vec<u64> {
    let mut rng = hyperturan_core::rng::seeded(seed);
    (0..len).map(|_| rng.random()).collect()
}

fn bitset_kernels(c: &mut Criterion) {
    let (a, b) = (words(64, 1), words(64, 2));
    let mut dst = vec![0u64; 64];
    c.bench_function("and_into 4096 bits", |bench| {
        bench.iter(|| and_into(black_box(&mut dst), black_box(&a), black_box(&b)))
    });
    c.bench_function("and_count 4096 bits", |bench| bench.iter(|| and_count(black_box(&a), black_box(&b))));
}

fn bipartite_search(c: &mut Criterion) {
    let g = random_hypergraph(40, 3, 0.05, 7).unwrap();
    let idx = build_shadow_links(&g);
    c.bench_function("shadow index n=40", |bench| bench.iter(|| build_shadow_links(black_box(&g))));
    c.bench_function("find K_{3,2} n=40", |bench| {
        bench.iter(|| find_bipartite_violation(black_box(&g), &idx, 3, 2).unwrap())
    });
}

criterion_group!(benches, bitset_kernels, bipartite_search);
criterion_main!(benches);
