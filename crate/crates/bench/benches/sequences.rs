use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use haarqmc::estimator::projection_volume;
use haarqmc::{builtin, radical_inverse, run, ExperimentSpec, Mode, OrthoSequence, OrthoSequenceSpec, SequenceKind};
use std::hint::black_box;

fn radical(c: &mut Criterion) {
    c.bench_function("radical_inverse base 3, 1000 indices", |b| {
        b.iter(|| {
            (1..=1000u64)
                .map(|i| radical_inverse(black_box(i), 3).unwrap())
                .sum::<f64>()
        })
    });
}

fn ortho(c: &mut Criterion) {
    let mut group = c.benchmark_group("ortho_sequence_1000");
    for n in [3, 4, 5] {
        for veech in [true, false] {
            let id = BenchmarkId::new(if veech { "qmc" } else { "qmc-noveech" }, n);
            group.bench_with_input(id, &n, |b, &n| {
                b.iter(|| {
                    let mut seq =
                        OrthoSequence::new(OrthoSequenceSpec::new(n, SequenceKind::ScrambledHalton, 0, veech)).unwrap();
                    (0..1000)
                        .map(|_| seq.next_element().unwrap().matrix()[(0, 0)])
                        .sum::<f64>()
                })
            });
        }
    }
    group.finish();
}

fn hull(c: &mut Criterion) {
    let mut group = c.benchmark_group("projection_volume");
    let g = OrthoSequence::new(OrthoSequenceSpec::scrambled(3, 0))
        .unwrap()
        .element(17)
        .unwrap();
    for label in ["3-cube", "k-icosahedron"] {
        let body = builtin(label).unwrap();
        for k in [1, 2] {
            group.bench_function(format!("{label} k={k}"), |b| {
                b.iter(|| projection_volume(&body, black_box(&g), k).unwrap())
            });
        }
    }
    group.finish();
}

fn estimate(c: &mut Criterion) {
    let spec = ExperimentSpec::new(builtin("4-cube").unwrap(), 3, 1000, Mode::Qmc);
    c.bench_function("estimate 4-cube k=3 N=1000", |b| {
        b.iter(|| run(black_box(&spec)).unwrap().estimate)
    });
}

criterion_group!(benches, radical, ortho, hull, estimate);
criterion_main!(benches);
