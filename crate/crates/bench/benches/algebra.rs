use criterion::{criterion_group, criterion_main, Criterion};
use gorenstein::hessians::{mixed_hessian, symbolic_det};
use gorenstein::{build_algebra, wlp_check, CheckConfig};
use gorenstein_bench::workloads;

fn build(c: &mut Criterion) {
    for (id, f) in workloads() {
        c.bench_function(&format!("build_algebra/{id}"), |b| b.iter(|| build_algebra(&f).unwrap()));
    }
}

fn lefschetz(c: &mut Criterion) {
    let cfg = CheckConfig::with_seed(1);
    for (id, f) in workloads() {
        let alg = build_algebra(&f).unwrap();
        c.bench_function(&format!("wlp_check/{id}"), |b| b.iter(|| wlp_check(&alg, &cfg).unwrap()));
    }
}

fn determinant(c: &mut Criterion) {
    let alg = build_algebra(&workloads()[0].1).unwrap();
    let h = mixed_hessian(&alg, 1, 1).unwrap();
    c.bench_function("symbolic_det/square hess^1", |b| b.iter(|| symbolic_det(&h, 12).unwrap()));
}

criterion_group!(benches, build, lefschetz, determinant);
criterion_main!(benches);
