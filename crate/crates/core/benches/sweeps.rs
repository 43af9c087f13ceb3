use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use contikit::divisibility::pseudoprime_scan;
use contikit::identity::sweep;
use contikit::sample::random_strict_systems;
use contikit::{Execution, PeriodicSystem};

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn pseudoprime_scans(c: &mut Criterion) {
    let s8 = PeriodicSystem::from_ints(&[1, 1], &[1, 4], 2, true).unwrap();
    let mut group = c.benchmark_group("pseudoprime_scan");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "3..=20001"), &exec, |b, &exec| {
            b.iter(|| pseudoprime_scan(black_box(&s8), 3..=20_001, exec).unwrap())
        });
    }
    group.finish();
}

fn identity_sweeps(c: &mut Criterion) {
    let systems = random_strict_systems(1, 16, 4, 9);
    let mut group = c.benchmark_group("identity_sweep");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "16 systems, bound 6"), &exec, |b, &exec| {
            b.iter(|| exec.map(systems.clone(), |s| sweep(&s, 6).unwrap().1.len()))
        });
    }
    group.finish();
}

criterion_group!(benches, pseudoprime_scans, identity_sweeps);
criterion_main!(benches);
