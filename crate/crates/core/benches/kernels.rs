//! Kernel timings. With the `parallel` feature each kernel is measured on the
//! global rayon pool and on a one-thread pool; without it only the plain
//! sequential path exists.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simplicial_oversampling::eval::{
    generate_synthetic, grid_search_eval, EvalMethod, GridConfig, Shape, SyntheticSpec,
};
use simplicial_oversampling::{
    knn_graph, maximal_cliques, mean_model_distance, oversample_simplicial, oversample_smote, Method, PointSet,
    SimplexDim,
};

fn cloud(n: usize, d: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PointSet::new(Array2::from_shape_fn((n, d), |_| rng.random_range(-1.0..1.0))).unwrap()
}

#[cfg(feature = "parallel")]
fn modes() -> Vec<(&'static str, Option<rayon::ThreadPool>)> {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    vec![("parallel", None), ("sequential", Some(single))]
}

#[cfg(not(feature = "parallel"))]
fn modes() -> Vec<(&'static str, Option<()>)> {
    vec![("sequential", None)]
}

#[cfg(feature = "parallel")]
fn run_in<T: Send>(pool: &Option<rayon::ThreadPool>, f: impl FnOnce() -> T + Send) -> T {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_in<T>(_: &Option<()>, f: impl FnOnce() -> T) -> T {
    f()
}

fn bench_knn(c: &mut Criterion) {
    let mut group = c.benchmark_group("knn_graph");
    let ps = cloud(2000, 8, 1);
    for (name, pool) in modes() {
        group.bench_function(BenchmarkId::new(name, "n2000_d8_k10"), |b| {
            b.iter(|| run_in(&pool, || knn_graph(black_box(&ps), 10).unwrap()))
        });
    }
    group.finish();
}

fn bench_cliques(c: &mut Criterion) {
    let ps = cloud(400, 3, 2);
    let g = knn_graph(&ps, 10).unwrap();
    c.bench_function("maximal_cliques/n400_k10", |b| {
        b.iter(|| maximal_cliques(black_box(&g)))
    });
}

fn bench_samplers(c: &mut Criterion) {
    let ds = generate_synthetic(&SyntheticSpec::new(Shape::Moons, 3));
    let mut group = c.benchmark_group("oversample");
    for (name, pool) in modes() {
        group.bench_function(BenchmarkId::new(name, "smote_k10"), |b| {
            b.iter(|| run_in(&pool, || oversample_smote(black_box(&ds), 10, 250, 1).unwrap()))
        });
        group.bench_function(BenchmarkId::new(name, "simplicial_k10_p3"), |b| {
            b.iter(|| {
                run_in(&pool, || {
                    oversample_simplicial(black_box(&ds), 10, SimplexDim::Finite(3), 250, 1).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn bench_model_distance(c: &mut Criterion) {
    let minority = cloud(60, 3, 4);
    let queries = cloud(300, 3, 5);
    let mut group = c.benchmark_group("mean_model_distance");
    for (name, pool) in modes() {
        group.bench_function(BenchmarkId::new(name, "k6_p2"), |b| {
            b.iter(|| {
                run_in(&pool, || {
                    mean_model_distance(&queries, &minority, 6, SimplexDim::Finite(2)).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn bench_grid(c: &mut Criterion) {
    let datasets = vec![(
        "moons".to_string(),
        generate_synthetic(&SyntheticSpec::new(Shape::Moons, 6)),
    )];
    let methods = [
        EvalMethod::Oversample(Method::Smote),
        EvalMethod::Oversample(Method::Simplicial),
    ];
    let mut grid = GridConfig::synthetic(6);
    grid.repeats = 1;
    grid.k_grid = vec![3, 5];
    let mut group = c.benchmark_group("grid_search_eval");
    group.sample_size(10);
    for (name, pool) in modes() {
        group.bench_function(BenchmarkId::new(name, "moons_1x4"), |b| {
            b.iter(|| run_in(&pool, || grid_search_eval(&datasets, &methods, &grid).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_knn,
    bench_cliques,
    bench_samplers,
    bench_model_distance,
    bench_grid
);
criterion_main!(benches);
