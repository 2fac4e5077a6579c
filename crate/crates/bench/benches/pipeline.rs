use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use spinelab::homology::betti_numbers;
use spinelab::{
    derived, dual_spine, nerve, search_min_vertices, verify_spine, SearchBudget, VerifyOptions,
};
use spinelab_bench::fixtures;

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    for (name, t, p) in fixtures() {
        group.bench_function(format!("derived/{name}"), |b| {
            b.iter(|| derived(black_box(&t)))
        });
        group.bench_function(format!("dual_spine/{name}"), |b| {
            b.iter(|| dual_spine(black_box(&t), &p).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verification");
    group.sample_size(10);
    for (name, t, p) in fixtures() {
        let s = dual_spine(&t, &p).unwrap();
        s.tower().second();
        group.bench_function(format!("verify_spine/{name}"), |b| {
            b.iter(|| verify_spine(&s, VerifyOptions::default()))
        });
        group.bench_function(format!("nerve/{name}"), |b| b.iter(|| nerve(&s)));
        let sc = s.complex();
        group.bench_function(format!("spine_homology/{name}"), |b| {
            b.iter(|| betti_numbers(&sc))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (name, t, _) in fixtures()
        .into_iter()
        .filter(|(n, _, _)| *n == "T2_7" || *n == "genus2_10")
    {
        let budget = SearchBudget {
            iterations: 200,
            ..SearchBudget::default()
        };
        group.bench_function(format!("search/{name}"), |b| {
            b.iter(|| search_min_vertices(&t, &budget).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, construction, verification, search);
criterion_main!(benches);
