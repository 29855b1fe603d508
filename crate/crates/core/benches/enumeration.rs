//! Compares enumeration-heavy workloads on a single-thread pool against
//! the default pool. Build with `--no-default-features` to measure the
//! sequential fallback itself.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use purity_core::moncat::enumerate_monoidal_functors;
use purity_core::{models, torsion, Budget};

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

fn workloads() -> Vec<(&'static str, Box<dyn Fn() + Sync>)> {
    let ml = Arc::new(models::i0(&models::ml()));
    let i1ml = Arc::new(models::i1(&models::ml()).expect("ML is commutative"));
    let corpus: Vec<_> = models::corpus().into_iter().map(Arc::new).collect();
    let (a, b) = (ml.clone(), i1ml.clone());
    let functors = move || {
        enumerate_monoidal_functors(&a, &b, &Budget::default()).expect("within budget");
    };
    let q = torsion::purify(&ml).expect("ML purifies");
    let probes = move || {
        let r = torsion::verify_canonical(&q, &corpus, &Budget::default()).expect("within budget");
        assert!(r.passed());
    };
    vec![
        ("functors i0(ML) -> i1(ML)", Box::new(functors)),
        ("canonical probes of i0(ML)", Box::new(probes)),
    ]
}

fn compare(c: &mut Criterion) {
    let mode = if purity_core::par::enabled() {
        "rayon"
    } else {
        "sequential build"
    };
    let mut group = c.benchmark_group(format!("enumeration ({mode})"));
    group.sample_size(10);
    let single = pool(1);
    let threads = rayon::current_num_threads();
    let full = pool(threads);
    for (name, work) in workloads() {
        group.bench_function(BenchmarkId::new(name, "1 thread"), |bch| {
            bch.iter(|| single.install(&work))
        });
        group.bench_function(
            BenchmarkId::new(name, format!("{threads} threads")),
            |bch| bch.iter(|| full.install(&work)),
        );
    }
    group.finish();
}

criterion_group!(benches, compare);
criterion_main!(benches);
