use criterion::{criterion_group, criterion_main, Criterion};
use reflexa::certify::{certify_quasi_abelian, HarnessOptions};
use reflexa::corpus::{auslander_x3, linear_a};
use reflexa::{enumerate_modules, min_proj_resolution, sgrade, Field, Module, Side, DEFAULT_BUDGET};
use reflexa_bench::random_matrix;

fn linear_algebra(c: &mut Criterion) {
    let f2 = Field::prime(2).unwrap();
    let q = Field::rational();
    let a = random_matrix(f2, 60, 60, 2, 1);
    let b = random_matrix(q, 20, 20, 7, 2);
    c.bench_function("rref F2 60x60", |bch| bch.iter(|| a.rref()));
    c.bench_function("rref Q 20x20", |bch| bch.iter(|| b.rref()));
}

fn homology(c: &mut Criterion) {
    let a = auslander_x3().unwrap();
    let simples: Vec<Module> = (0..a.vertex_count()).map(|v| Module::simple(&a, Side::Left, v).unwrap()).collect();
    c.bench_function("resolve simples of auslander x^3 to degree 4", |bch| {
        bch.iter(|| simples.iter().map(|s| min_proj_resolution(s, 4).unwrap().length_computed()).sum::<usize>())
    });
    c.bench_function("sgrade simples of auslander x^3", |bch| {
        bch.iter(|| simples.iter().map(|s| sgrade(s, 6).unwrap().floor()).sum::<usize>())
    });
}

fn enumeration(c: &mut Criterion) {
    let a = linear_a(3).unwrap();
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10);
    g.bench_function("modules of kA3 up to dim 3", |bch| {
        bch.iter(|| enumerate_modules(&a, Side::Left, 3, DEFAULT_BUDGET).unwrap().modules.len())
    });
    let a2 = linear_a(2).unwrap();
    let opts = HarnessOptions { dim_budget: 3, ..HarnessOptions::default() };
    g.bench_function("certify quasi-abelian kA2 dim 3", |bch| bch.iter(|| certify_quasi_abelian(&a2, opts).unwrap().verdict));
    g.finish();
}

criterion_group!(benches, linear_algebra, homology, enumeration);
criterion_main!(benches);
