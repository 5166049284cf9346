use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use layerfd::{
    assemble, epsilon_sweep, refinement_study_with, thomas_solve, uniform_mesh, Execution, MeshSpec, ProblemSpec,
    Scheme,
};

const LEVELS: [usize; 7] = [256, 512, 1024, 2048, 4096, 8192, 16384];

fn bench_thomas(c: &mut Criterion) {
    let p = ProblemSpec::model(1e-8).unwrap();
    let mut group = c.benchmark_group("thomas_solve");
    for shift in [10u32, 12, 14, 16, 18] {
        let n = 1usize << shift;
        let system = assemble(&p, &uniform_mesh(n + 1).unwrap(), Scheme::Upwind).unwrap();
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &system, |b, s| {
            b.iter(|| thomas_solve(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn bench_refinement_study(c: &mut Criterion) {
    let p = ProblemSpec::model(1e-8).unwrap();
    let mut group = c.benchmark_group("refinement_study");
    group.sample_size(20);
    for (label, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_function(label, |b| {
            b.iter(|| {
                refinement_study_with(&p, black_box(&LEVELS), MeshSpec::shishkin(), Scheme::Upwind, Some(1.0), execution)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_epsilon_sweep(c: &mut Criterion) {
    let epsilons = [1e-2, 1e-4, 1e-6, 1e-8];
    let mut group = c.benchmark_group("epsilon_sweep");
    group.sample_size(10);
    for (label, execution) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_function(label, |b| {
            b.iter(|| epsilon_sweep(&epsilons, black_box(&LEVELS), MeshSpec::shishkin(), Scheme::Upwind, None, execution).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_thomas, bench_refinement_study, bench_epsilon_sweep);
criterion_main!(benches);
