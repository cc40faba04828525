use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ksnake_core::{
    assemble_he_snake, build_all_chains, build_chain, build_merge_tree, kendall_distance,
    necklace_of, Permutation,
};

fn chains(c: &mut Criterion) {
    let tree = build_merge_tree(3).unwrap();
    let start = necklace_of(&Permutation::new(&[3, 4, 5, 6, 7, 1, 2]).unwrap()).unwrap();
    c.bench_function("chain_s7", |b| b.iter(|| build_chain(black_box(&tree), &start).unwrap()));
    c.bench_function("all_chains_s7", |b| b.iter(|| build_all_chains(black_box(3)).unwrap()));
}

fn assembly(c: &mut Criterion) {
    let mut g = c.benchmark_group("assembly");
    g.sample_size(10);
    g.bench_function("he_s7", |b| b.iter(|| assemble_he_snake(black_box(3)).unwrap()));
    g.finish();
}

fn distance(c: &mut Criterion) {
    let a = Permutation::new(&[3, 7, 4, 5, 6, 2, 1, 9, 8, 11, 10]).unwrap();
    let b = Permutation::new(&[11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1]).unwrap();
    c.bench_function("kendall_s11", |bn| bn.iter(|| kendall_distance(black_box(&a), black_box(&b)).unwrap()));
}

criterion_group!(benches, chains, assembly, distance);
criterion_main!(benches);
