use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fva_core::report::sweep;
use fva_core::torus::{run_dim3, Dim3Options};
use fva_core::{euler_char, weyl_dim, RootSystemA};

fn weyl(c: &mut Criterion) {
    let rs = RootSystemA::new(33).unwrap();
    let lambda = &rs.fundamental(1).scale(31) + &rs.fundamental(2);
    c.bench_function("weyl_dim p=31 n=33", |b| {
        b.iter(|| weyl_dim(rs, black_box(&lambda)).unwrap())
    });
    let mu = rs
        .weight(&{
            let mut v = vec![0i64; rs.rank()];
            v[0] = -2;
            v[1] = 40;
            v[5] = -3;
            v
        })
        .unwrap();
    c.bench_function("euler_char n=33 non-dominant", |b| {
        b.iter(|| euler_char(rs, black_box(&mu)).unwrap())
    });
}

fn pipelines(c: &mut Criterion) {
    c.bench_function("dim3 pipeline", |b| {
        b.iter(|| run_dim3(Dim3Options::default()).unwrap())
    });
    c.bench_function("dim3 pipeline, all charts", |b| {
        b.iter(|| run_dim3(Dim3Options { all_charts: true }).unwrap())
    });
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("max_p=31", |b| b.iter(|| sweep(black_box(31)).unwrap()));
    g.finish();
}

criterion_group!(benches, weyl, pipelines);
criterion_main!(benches);
