mod common;

use common::{elections, id};
use rla_core::assertions::{ranked_pairs_assertions, AssertionSet, Method};
use rla_core::audit::{
    estimate_audit, kk_update, run_audit, simulate_asn, simulate_trials,
    simulate_trials_sequential, AuditConfig, AuditOutcome, AuditStyle, RiskState,
};
use rla_core::io::{scale, SampleRecord};
use rla_core::tabulation::{ranked_pairs_tabulate, TiePolicy};
use rla_core::{Assertion, Ballot, CandidateId, Election};

fn ab() -> Assertion {
    Assertion::PairwisePositive {
        winner: CandidateId(0),
        loser: CandidateId(1),
    }
}

#[test]
fn kk_reaches_five_percent_after_five_ones() {
    // Values from a separate scripted run of the same recursion.
    let expected = [
        0.5454545454545454,
        0.2950162784873528,
        0.15818126991251383,
        0.08405696348678102,
        0.04425726486614606,
    ];
    let mut s = RiskState::new(100, 0.1).unwrap();
    for want in expected {
        s = kk_update(s, 1.0).unwrap();
        assert!(
            (s.p_value() - want).abs() < 1e-12,
            "{} vs {want}",
            s.p_value()
        );
    }
}

#[test]
fn null_mean_stays_above_risk_limit() {
    let n = 100_000;
    let mut s = RiskState::new(n, 0.1).unwrap();
    for _ in 0..n / 2 {
        assert!(s.update(0.5).unwrap() > 0.05);
    }
}

#[test]
fn unanimous_assertion_needs_few_ballots() {
    let e = Election::from_names(&["A", "B"], &[(&["A"], 10_000)]).unwrap();
    let cfg = AuditConfig {
        error_rate: 0.0,
        trials: 100,
        ..Default::default()
    };
    let asn = simulate_asn(&ab(), &e, &cfg).unwrap();
    assert!(asn.median < 20, "{asn:?}");
    assert_eq!(asn.certified_fraction, 1.0);
}

#[test]
fn false_assertion_costs_everything() {
    let e = Election::from_names(&["A", "B"], &[(&["A"], 400), (&["B"], 600)]).unwrap();
    let cfg = AuditConfig {
        trials: 200,
        ..Default::default()
    };
    let asn = simulate_asn(&ab(), &e, &cfg).unwrap();
    assert_eq!(asn.median, 1000);
}

#[test]
fn tied_election_rarely_certifies() {
    let e = Election::from_names(&["A", "B"], &[(&["A"], 500), (&["B"], 500)]).unwrap();
    let cfg = AuditConfig {
        error_rate: 0.0,
        ..Default::default()
    };
    let outcomes = simulate_trials(&ab(), &e, &cfg, 0).unwrap().unwrap();
    let rate = outcomes.iter().filter(|o| o.certified).count() as f64 / outcomes.len() as f64;
    let bound = 0.05 + 3.0 * (0.05f64 * 0.95 / 2000.0).sqrt();
    assert!(rate <= bound, "certified {rate}");
}

#[test]
fn election1_asn_is_pinned() {
    let [e1, _, _] = elections();
    let a = Assertion::PairwisePositive {
        winner: id(&e1, "A"),
        loser: id(&e1, "B"),
    };
    let asn = simulate_asn(&a, &e1, &AuditConfig::default()).unwrap();
    assert_eq!(asn.median, ELECTION1_AB_ASN);
}

const ELECTION1_AB_ASN: u64 = 5373;

#[test]
fn estimate_takes_the_largest_median() {
    let [_, _, e3] = elections();
    let set = ranked_pairs_assertions(&ranked_pairs_tabulate(&e3.scores(), TiePolicy::FlagOnly));
    let cfg = AuditConfig {
        trials: 200,
        ..Default::default()
    };
    let est = estimate_audit(&set, &e3, &cfg).unwrap();
    assert_eq!(est.per_assertion.len(), 5);
    assert_eq!(
        est.overall,
        est.per_assertion.iter().map(|a| a.median).max().unwrap()
    );
    assert!(!est.full_count);

    let fhc = AssertionSet::full_hand_count(Method::RankedPairs, "tie");
    let est = estimate_audit(&fhc, &e3, &cfg).unwrap();
    assert!(est.full_count);
    assert_eq!(est.overall, 29_000);
}

#[test]
fn simulation_is_independent_of_thread_count() {
    let [e1, _, _] = elections();
    let e = scale(&e1, 10).unwrap();
    let a = Assertion::PairwisePositive {
        winner: id(&e, "A"),
        loser: id(&e, "C"),
    };
    for style in [AuditStyle::Polling, AuditStyle::Comparison] {
        let cfg = AuditConfig {
            trials: 300,
            style,
            ..Default::default()
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate_trials(&a, &e, &cfg, 3).unwrap().unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert_eq!(
            one,
            simulate_trials_sequential(&a, &e, &cfg, 3)
                .unwrap()
                .unwrap()
        );
    }
}

#[test]
fn error_free_comparison_audit_certifies() {
    let [_, _, e3] = elections();
    let set = ranked_pairs_assertions(&ranked_pairs_tabulate(&e3.scores(), TiePolicy::FlagOnly));
    let mut samples = Vec::new();
    for (ballot, count) in e3.signatures() {
        for _ in 0..count.min(300) {
            samples.push(SampleRecord {
                reported: Some(ballot.clone()),
                audited: ballot.clone(),
            });
        }
    }
    let cfg = AuditConfig {
        style: AuditStyle::Comparison,
        ..Default::default()
    };
    let report = run_audit(&set, &e3, &samples, &cfg).unwrap();
    assert_eq!(report.outcome, AuditOutcome::Certified);
    for a in &report.per_assertion {
        assert!(a.p_values.windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn unanimous_polling_sample_certifies() {
    let e = Election::from_names(&["A", "B"], &[(&["A"], 1000)]).unwrap();
    let set = AssertionSet::new(Method::Condorcet, Some(CandidateId(0)), vec![ab()]);
    let samples = vec![
        SampleRecord {
            reported: None,
            audited: Ballot::of(&[0]).unwrap()
        };
        50
    ];
    let report = run_audit(&set, &e, &samples, &AuditConfig::default()).unwrap();
    assert_eq!(report.outcome, AuditOutcome::Certified);
    assert_eq!(report.ballots_examined, 50);
}
