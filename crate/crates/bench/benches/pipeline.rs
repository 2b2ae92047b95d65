use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use koszulsg::homology::{koszul_verdict_for, KoszulOptions};
use koszulsg::tangent_cone::TangentCone;
use koszulsg::toric::toric_ideal;
use koszulsg_bench::{semigroup, ALMOST_CI, GLUED_QUARTIC, NON_KOSZUL};

fn toric(c: &mut Criterion) {
    let mut group = c.benchmark_group("toric_ideal");
    for gens in [NON_KOSZUL, ALMOST_CI, GLUED_QUARTIC] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{gens:?}")), gens, |b, g| {
            b.iter(|| toric_ideal(&semigroup(black_box(g))).generators().len())
        });
    }
    group.finish();
}

fn tangent_cone(c: &mut Criterion) {
    let mut group = c.benchmark_group("tangent_cone");
    for gens in [NON_KOSZUL, ALMOST_CI, GLUED_QUARTIC] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{gens:?}")), gens, |b, g| {
            b.iter(|| TangentCone::new(&semigroup(black_box(g))).unwrap().mu())
        });
    }
    group.finish();
}

fn koszul(c: &mut Criterion) {
    let mut group = c.benchmark_group("koszul_verdict");
    group.sample_size(10);
    for (gens, max_i) in [(NON_KOSZUL, 4), (ALMOST_CI, 6)] {
        let opts = KoszulOptions {
            max_i,
            ..KoszulOptions::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{gens:?}")), gens, |b, g| {
            b.iter(|| {
                let tc = TangentCone::new(&semigroup(black_box(g))).unwrap();
                koszul_verdict_for(&tc, &opts).unwrap().status
            })
        });
    }
    group.finish();
}

criterion_group!(benches, toric, tangent_cone, koszul);
criterion_main!(benches);
