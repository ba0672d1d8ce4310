//! Benchmarks for the two data-parallel kernels, comparing the rayon path
//! against the sequential reference, plus the exact-arithmetic hot spots.
//!
//! Run with `cargo bench -p mcg-core`. The parallel variants require the
//! default `parallel` feature; the sequential reference is always available.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mcg_core::models::full_model;
use mcg_core::quotient::{
    bsgs, generation_verdict, named_set_matrices, orbit_size, orbit_size_sequential, ModMatrix,
    NamedSet,
};
use mcg_core::symp::{evaluate, matrix_order};
use mcg_core::verify::{identity_suite, run_suite};
use mcg_core::words::word_q;

fn orbit_inputs(g: usize, p: u64) -> (Vec<ModMatrix>, Vec<u64>) {
    let model = full_model(g).expect("model");
    let mats = named_set_matrices(&model, NamedSet::SixInvolutions).expect("set");
    let gens: Vec<ModMatrix> = mats
        .iter()
        .map(|m| ModMatrix::from_symp(m, p).expect("mod reduction"))
        .collect();
    let mut base = vec![0u64; 2 * g];
    base[0] = 1;
    (gens, base)
}

fn bench_orbit(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_expansion");
    for (g, p) in [(3usize, 5u64), (4, 3), (5, 2)] {
        let (gens, base) = orbit_inputs(g, p);
        let label = format!("g{g}_p{p}");
        group.bench_with_input(BenchmarkId::new("sequential", &label), &(), |b, _| {
            b.iter(|| orbit_size_sequential(&gens, base.clone()))
        });
        group.bench_with_input(BenchmarkId::new("parallel", &label), &(), |b, _| {
            b.iter(|| orbit_size(&gens, base.clone()))
        });
    }
    group.finish();
}

fn bench_bsgs(c: &mut Criterion) {
    let mut group = c.benchmark_group("stabilizer_chain");
    group.sample_size(20);
    for (g, p) in [(3usize, 3u64), (3, 5), (5, 2)] {
        let (gens, _) = orbit_inputs(g, p);
        group.bench_function(format!("six_involutions_g{g}_p{p}"), |b| {
            b.iter(|| bsgs(&gens, Some(10_000_000)).expect("chain").order())
        });
    }
    group.finish();
}

fn bench_battery_cell(c: &mut Criterion) {
    let mut group = c.benchmark_group("generation_verdict");
    group.sample_size(10);
    let model = full_model(4).expect("model");
    group.bench_function("wajnryb_pair_g4_p3", |b| {
        b.iter(|| {
            generation_verdict(&model, NamedSet::WajnrybPair, 3, Some(10_000_000))
                .expect("verdict")
                .generates
        })
    });
    group.finish();
}

fn bench_exact_arithmetic(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_symplectic");
    let model = full_model(4).expect("model");
    let table = model.generator_table().expect("table");
    let q = word_q(4).expect("word");
    group.bench_function("evaluate_chain_word_g4", |b| {
        b.iter(|| evaluate(&q, &table).expect("evaluation"))
    });
    let qm = evaluate(&q, &table).expect("evaluation");
    group.bench_function("matrix_order_q_g4", |b| b.iter(|| matrix_order(&qm, 48)));
    let checks = identity_suite(&model).expect("suite");
    group.bench_function("identity_suite_g4", |b| {
        b.iter(|| run_suite(&model, &table, &checks).expect("suite"))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_orbit,
    bench_bsgs,
    bench_battery_cell,
    bench_exact_arithmetic
);
criterion_main!(benches);
