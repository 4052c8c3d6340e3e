use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rla_core::audit::{simulate_trials, simulate_trials_sequential, AuditConfig, AuditStyle};
use rla_core::io::scale;
use rla_core::tabulation::{kemeny_tabulate, DEFAULT_MAX_K};
use rla_core::{Assertion, Ballot, Election};

fn election3() -> Election {
    let rows: [(&[&str], u64); 7] = [
        (&["A", "B", "D", "C"], 7000),
        (&["A", "C", "B", "D"], 2000),
        (&["B", "C", "D", "A"], 4000),
        (&["B", "D", "A", "C"], 6000),
        (&["C", "A", "B", "D"], 2000),
        (&["C", "D", "A", "B"], 7000),
        (&["D", "C", "A", "B"], 1000),
    ];
    Election::from_names(&["A", "B", "C", "D"], &rows).unwrap()
}

fn trials(c: &mut Criterion) {
    let e = election3();
    let e = scale(&e, 10).unwrap();
    let a = Assertion::ScoreComparison {
        hi: (e.candidate_id("A").unwrap(), e.candidate_id("B").unwrap()),
        lo: (e.candidate_id("C").unwrap(), e.candidate_id("A").unwrap()),
    };
    let mut group = c.benchmark_group("simulate_trials");
    group.sample_size(10);
    for style in [AuditStyle::Polling, AuditStyle::Comparison] {
        let cfg = AuditConfig {
            trials: 500,
            style,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::new("parallel", style), &cfg, |b, cfg| {
            b.iter(|| simulate_trials(&a, &e, cfg, 0).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", style), &cfg, |b, cfg| {
            b.iter(|| simulate_trials_sequential(&a, &e, cfg, 0).unwrap())
        });
    }
    group.finish();
}

fn kemeny(c: &mut Criterion) {
    let names: Vec<String> = (0..DEFAULT_MAX_K).map(|i| format!("C{i}")).collect();
    let ballots = (0..DEFAULT_MAX_K).map(|i| {
        let order: Vec<usize> = (0..DEFAULT_MAX_K)
            .map(|j| (i * 3 + j * 5) % DEFAULT_MAX_K)
            .collect();
        (Ballot::of(&order).unwrap(), 100 + i as u64)
    });
    let e = Election::new(names, ballots).unwrap();
    let t = e.pairwise_tallies();
    c.bench_function("kemeny_8_candidates", |b| {
        b.iter(|| kemeny_tabulate(&t, DEFAULT_MAX_K).unwrap())
    });
}

criterion_group!(benches, trials, kemeny);
criterion_main!(benches);
