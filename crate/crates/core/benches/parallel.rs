use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use moduli_core::fock::{self, Normalization, SurfaceDatum};
use moduli_core::par::Mode;
use moduli_core::quotlab;
use moduli_core::verify;

const MODES: [(&str, Mode); 2] = [("sequential", Mode::Sequential), ("parallel", Mode::Parallel)];

fn powersum_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("powersum_oracle_w5_i3");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| verify::check_powersum_oracle(5, 3, m).unwrap())
        });
    }
    g.finish();
}

fn fock_relations(c: &mut Criterion) {
    let s = SurfaceDatum::abelian();
    let mut g = c.benchmark_group("fock_relations_abelian_e3");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| fock::check_relations(&s, 3, Normalization::Standard, m).unwrap())
        });
    }
    g.finish();
}

fn quot_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("quot_suite_20x8");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &m| {
            b.iter(|| quotlab::run_suite(20, 7, 8, None, 4, m).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, powersum_oracle, fock_relations, quot_suite);
criterion_main!(benches);
