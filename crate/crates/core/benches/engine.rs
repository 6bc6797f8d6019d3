use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use winf_core::w1inf::{find_singular, is_singular, Annihilators, Model, Ordering, W1Inf};

fn singular_search() {
    let model = Model::current(-2);
    let found = find_singular(&model, 6, Annihilators::Generating);
    assert!(found.iter().all(|v| is_singular(&model, v)));
}

fn determinant() {
    let ctx = W1Inf::new(2);
    ctx.construct_dij(&[0, 1, 2], &[0, 1, 4], Ordering::Ascending).unwrap();
}

fn run(c: &mut Criterion, label: &str, pool: impl Fn(&(dyn Fn() + Sync))) {
    let mut g = c.benchmark_group("engine");
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("singular_n2_w6", label), |b| b.iter(|| pool(&singular_search)));
    g.bench_function(BenchmarkId::new("dij_n2", label), |b| b.iter(|| pool(&determinant)));
    g.finish();
}

#[cfg(feature = "parallel")]
fn benches(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    run(c, "sequential", |f| single.install(f));
    run(c, "parallel", |f| f());
}

#[cfg(not(feature = "parallel"))]
fn benches(c: &mut Criterion) {
    run(c, "sequential", |f| f());
}

criterion_group!(engine, benches);
criterion_main!(engine);
