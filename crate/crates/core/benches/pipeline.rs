use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use uawa_core::exec::{map_ordered, map_sequential};
use uawa_core::modulegen::{analyze, solve_tridiagonal, SolverConfig};
use uawa_core::qracah::generate;
use uawa_core::repkit::{burnside_irreducible, Representation};
use uawa_core::{make_field, FieldExt};

fn modules(d: u32) -> Vec<Representation> {
    let f = make_field(d).unwrap();
    let cfg = SolverConfig::standard(&f);
    let seq = generate(&(f.q() + f.q_power(2))).unwrap();
    let mut out = Vec::new();
    for n in 2..=f.dbar() as usize {
        let thetas: Vec<_> = (0..n as i64).map(|i| seq.theta(i).clone()).collect();
        for gamma in [f.q() + f.int(1), f.int(2)] {
            if let Ok(reps) = solve_tridiagonal(&thetas, &gamma, &cfg) {
                out.extend(reps.into_iter().filter(|r| burnside_irreducible(r).0));
            }
        }
    }
    out
}

fn analysis(c: &mut Criterion) {
    let reps = modules(5);
    let mut g = c.benchmark_group("analyze_d5");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        b.iter(|| map_ordered(black_box(reps.clone()), |r| analyze(&r, &[]).map(|x| x.2.len())))
    });
    g.bench_function("sequential", |b| {
        b.iter(|| map_sequential(black_box(reps.clone()), |r| analyze(&r, &[]).map(|x| x.2.len())))
    });
    g.finish();
}

fn burnside(c: &mut Criterion) {
    let reps = modules(7);
    let mut g = c.benchmark_group("burnside_d7");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| map_ordered(black_box(reps.clone()), |r| burnside_irreducible(&r))));
    g.bench_function("sequential", |b| {
        b.iter(|| map_sequential(black_box(reps.clone()), |r| burnside_irreducible(&r)))
    });
    g.finish();
}

criterion_group!(benches, analysis, burnside);
criterion_main!(benches);
