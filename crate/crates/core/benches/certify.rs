use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dicke_core::sweep::{certification_sweep, occupations, oracle_sweep};
use dicke_core::{certify_with, DenseLimits, Execution, OccupationIndex};

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn single_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    for occ in ["2,2,2", "3,3,2", "2,2,2,2"] {
        let parent: OccupationIndex = occ.parse().unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, occ), &parent, |b, p| {
                b.iter(|| certify_with(p, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let parents = occupations(2..=3, 2..=6);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("certification", name), |b| {
            b.iter(|| certification_sweep(parents.clone(), exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("oracle", name), |b| {
            b.iter(|| oracle_sweep(2, 5, &DenseLimits::default(), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, single_report, sweeps);
criterion_main!(benches);
