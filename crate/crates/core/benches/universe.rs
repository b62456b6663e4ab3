use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lambdacc::lab::{LabConfig, Property, Universe};
use lambdacc::par::Mode;

fn modes(c: &mut Criterion) {
    let u = Universe::new(8, 6);
    let mut g = c.benchmark_group("universe");
    g.sample_size(10);
    for p in [Property::SurfaceFact, Property::MeasureDescent, Property::ReturnValue] {
        for (label, mode) in [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)] {
            let cfg = LabConfig { mode, ..LabConfig::default() };
            g.bench_with_input(BenchmarkId::new(p.name(), label), &cfg, |b, cfg| b.iter(|| p.run(&u, cfg)));
        }
    }
    g.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
