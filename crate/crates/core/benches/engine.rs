use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use moduli_core::rootdata::root_datum;
use moduli_core::stringy::{stringy_euler_commuting_pairs, stringy_hodge, LatticeAction, DEFAULT_ENGINE_CAP};
use moduli_core::torsion::{find_minus_one_points, ScanOptions};
use moduli_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn actions() -> Vec<LatticeAction> {
    vec![
        LatticeAction::hyperoctahedral(4, DEFAULT_ENGINE_CAP).unwrap(),
        LatticeAction::symmetric(5, DEFAULT_ENGINE_CAP).unwrap(),
        LatticeAction::from_root_datum(&root_datum("D4").unwrap(), DEFAULT_ENGINE_CAP).unwrap(),
        LatticeAction::from_root_datum(&root_datum("F4").unwrap(), DEFAULT_ENGINE_CAP).unwrap(),
        LatticeAction::from_root_datum(&root_datum("E6").unwrap(), DEFAULT_ENGINE_CAP).unwrap(),
    ]
}

fn bench_stringy(c: &mut Criterion) {
    let mut group = c.benchmark_group("stringy_hodge");
    group.sample_size(10);
    for action in actions() {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, &action.label), &action, |b, a| {
                b.iter(|| stringy_hodge(black_box(a), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("commuting_pairs");
    group.sample_size(10);
    let action = LatticeAction::from_root_datum(&root_datum("B3").unwrap(), DEFAULT_ENGINE_CAP).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, &action.label), |b| {
            b.iter(|| stringy_euler_commuting_pairs(black_box(&action), exec).unwrap())
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("torsion_scan");
    group.sample_size(10);
    for label in ["B3", "D4"] {
        let datum = root_datum(label).unwrap();
        for (name, exec) in MODES {
            let opts = ScanOptions {
                exec,
                ..ScanOptions::default()
            };
            group.bench_function(BenchmarkId::new(name, label), |b| {
                b.iter(|| find_minus_one_points(black_box(&datum), 4, opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_stringy, bench_pairs, bench_scan);
criterion_main!(benches);
