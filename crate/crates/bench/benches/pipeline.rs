//! Benchmarks of the main pipeline stages: root system construction,
//! isotropy decomposition with triple enumeration, and exact solving.

use criterion::{criterion_group, criterion_main, Criterion};
use flagcurv_core::flag_manifold::{decompose, enumerate_triples, resolve_flag};
use flagcurv_core::hermitian_geometry::AlmostComplexStructure;
use flagcurv_core::klsc_solver::solve;
use flagcurv_core::root_system::{build_root_system, Family, RootFamily};
use flagcurv_core::rat;
use std::hint::black_box;

fn bench_root_system_e8(c: &mut Criterion) {
    let spec = RootFamily::new(Family::E, 8).unwrap();
    c.bench_function("build_root_system E8", |b| {
        b.iter(|| black_box(build_root_system(black_box(spec))))
    });
}

fn bench_decompose_f4(c: &mut Criterion) {
    let spec = resolve_flag("F4/SU3xSU2xU1").unwrap();
    c.bench_function("decompose + triples F4/SU3xSU2xU1", |b| {
        b.iter(|| {
            let d = decompose(black_box(spec.clone()));
            black_box(enumerate_triples(&d))
        })
    });
}

fn bench_solve_g2(c: &mut Criterion) {
    let d = decompose(resolve_flag("G2/U2").unwrap());
    let j = AlmostComplexStructure::parse("-++").unwrap();
    c.bench_function("solve G2/U2 (-,+,+) at (1,2)", |b| {
        b.iter(|| black_box(solve(&d, &j, &[(1, rat(1)), (2, rat(2))], None).unwrap()))
    });
}

criterion_group!(benches, bench_root_system_e8, bench_decompose_f4, bench_solve_g2);
criterion_main!(benches);
