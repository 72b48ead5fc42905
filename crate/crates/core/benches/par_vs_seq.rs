//! Sequential against data-parallel execution on the main workloads.
//!
//! Without the `parallel` feature both variants run sequentially.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use crosssec::lang::LanguageRep;
use crosssec::par::Exec;
use crosssec::separation::{build_sep_instance, builtin_k, extract_k_with, verify_sep_cross_section};
use crosssec::verify::brute::brute_report;
use crosssec::verify::builtins::{l_prop31, l_prop35};
use crosssec::verify::{verify_with, EvalMap, VerifyConfig};
use crosssec::Word;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn structured(c: &mut Criterion) {
    let mut g = c.benchmark_group("structured");
    let l31 = LanguageRep::Regular(l_prop31());
    let l35 = LanguageRep::OneCounter(l_prop35());
    for (name, exec) in MODES {
        let cfg = VerifyConfig::new(3, 10, 10).with_exec(exec);
        g.bench_with_input(BenchmarkId::new("product", name), &cfg, |b, cfg| {
            b.iter(|| verify_with(black_box(&l31), &EvalMap::product(), cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("one-counter", name), &cfg, |b, cfg| {
            b.iter(|| verify_with(black_box(&l35), &EvalMap::ft(), cfg).unwrap())
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    let words: Vec<Word> = l_prop31().enumerate(7).into_iter().collect();
    for (name, exec) in MODES {
        let cfg = VerifyConfig::new(3, 7, 7).with_exec(exec);
        g.bench_with_input(BenchmarkId::new("product", name), &cfg, |b, cfg| {
            b.iter(|| brute_report(black_box(&words), &EvalMap::product(), cfg, "bench").unwrap())
        });
    }
    g.finish();
}

fn separation(c: &mut Criterion) {
    let mut g = c.benchmark_group("separation");
    let (b, k) = builtin_k("anbncn").unwrap();
    let inst = build_sep_instance(b, k).unwrap();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("extract", name), &exec, |b, &exec| {
            b.iter(|| extract_k_with(black_box(&inst.l_k), 9, exec))
        });
        let cfg = VerifyConfig::new(3, 9, 9).with_exec(exec);
        g.bench_with_input(BenchmarkId::new("verify", name), &cfg, |b, cfg| {
            b.iter(|| verify_sep_cross_section(black_box(&inst), cfg).unwrap())
        });
    }
    g.finish();
}

fn config() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(3))
}

criterion_group! {
    name = benches;
    config = config();
    targets = structured, enumeration, separation
}
criterion_main!(benches);
