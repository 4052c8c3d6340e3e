mod common;

use std::collections::BTreeSet;

use common::{elections, id, load, ELECTION1_SOI, ELECTION3};
use rla_core::assertions::{
    condorcet_assertions, export_assertions, import_assertions, kemeny_assertions,
    minimax_assertions, ranked_pairs_assertions, smith_assertions, SmithInner,
};
use rla_core::io::{parse, scale, SourceFormat};
use rla_core::tabulation::{
    condorcet_winner, irv_tabulate, kemeny_tabulate, minimax_tabulate, ranked_pairs_tabulate,
    smith_set, TiePolicy, Winner, DEFAULT_MAX_K,
};
use rla_core::{Assertion, Ballot, CandidateId, Election, Error, ScoreMatrix};

fn names(e: &Election, ids: &[CandidateId]) -> Vec<String> {
    ids.iter().map(|&c| e.name(c).to_string()).collect()
}

fn describe_all(e: &Election, set: &[Assertion]) -> Vec<String> {
    set.iter().map(|a| a.describe(e)).collect()
}

#[test]
fn election3_pairwise_tallies() {
    let e = load(ELECTION3);
    assert_eq!(e.total_ballots(), 29_000);
    let t = e.pairwise_tallies();
    let (a, b, c, d) = (id(&e, "A"), id(&e, "B"), id(&e, "C"), id(&e, "D"));
    let expected = [
        (a, b, 19_000),
        (b, a, 10_000),
        (a, c, 15_000),
        (c, a, 14_000),
        (a, d, 11_000),
        (d, a, 18_000),
        (b, c, 17_000),
        (c, b, 12_000),
        (b, d, 21_000),
        (d, b, 8_000),
        (c, d, 15_000),
        (d, c, 14_000),
    ];
    for (i, j, v) in expected {
        assert_eq!(t.get(i, j), v, "T({}≻{})", e.name(i), e.name(j));
    }
    let s = t.scores();
    assert_eq!(s.get(a, b), 9_000);
    assert_eq!(s.get(b, d), 13_000);
    assert_eq!(s.get(d, a), 7_000);
    assert_eq!(s.get(a, d), -7_000);
}

#[test]
fn election1_tallies_and_scores() {
    let [e, _, _] = elections();
    let t = e.pairwise_tallies();
    let (a, b, c) = (id(&e, "A"), id(&e, "B"), id(&e, "C"));
    assert_eq!(t.get(a, b), 5_500);
    assert_eq!(t.get(b, a), 2_800);
    assert_eq!(t.get(a, c), 5_300);
    assert_eq!(t.get(c, a), 3_000);
    let s = e.scores();
    assert_eq!(s.get(a, b), 2_700);
    assert_eq!(s.get(a, c), 2_300);
    assert_eq!(s.get(b, c), 7_300);
}

#[test]
fn preflib_and_native_agree() {
    let soi = parse(ELECTION1_SOI, SourceFormat::Preflib).unwrap();
    assert!(soi.warnings.is_empty());
    let [e1, _, _] = elections();
    assert_eq!(soi.election, e1);

    let bare = parse(
        "# NUMBER ALTERNATIVES: 3\n5000: 1,2\n2500: 2,3\n500: 3,1,2\n300: 2,1\n",
        SourceFormat::Preflib,
    )
    .unwrap()
    .election;
    assert_eq!(bare.candidates(), ["C1", "C2", "C3"]);
    assert_eq!(bare.pairwise_tallies(), e1.pairwise_tallies());
}

#[test]
fn scaling_examples() {
    let [e1, e2, _] = elections();
    assert_eq!(scale(&e1, 1).unwrap(), e1);
    assert_eq!(scale(&e2, 2).unwrap().total_ballots(), 88_000);
    assert!(matches!(scale(&e1, 0), Err(Error::InvalidArgument(_))));
}

#[test]
fn irv_winners() {
    let [e1, e2, e3] = elections();
    let r1 = irv_tabulate(&e1, TiePolicy::FlagOnly).unwrap();
    assert_eq!(e1.name(r1.winner), "A");
    assert_eq!(r1.rounds.len(), 1);

    let r2 = irv_tabulate(&e2, TiePolicy::FlagOnly).unwrap();
    assert_eq!(e2.name(r2.winner), "A");
    assert_eq!(names(&e2, &r2.elimination_order), ["C"]);
    assert_eq!(r2.rounds[1].exhausted, 5_000);

    let r3 = irv_tabulate(&e3, TiePolicy::FlagOnly).unwrap();
    assert_eq!(e3.name(r3.winner), "B");
    assert_eq!(names(&e3, &r3.elimination_order), ["D", "A"]);
    assert!(!r3.tie_flag);
}

#[test]
fn condorcet_winners() {
    let [e1, e2, e3] = elections();
    assert_eq!(condorcet_winner(&e1.scores()), Some(id(&e1, "A")));
    assert_eq!(condorcet_winner(&e2.scores()), Some(id(&e2, "C")));
    assert_eq!(condorcet_winner(&e3.scores()), None);
}

fn pref_names(e: &Election, p: &rla_core::tabulation::Preference) -> (String, String) {
    (e.name(p.winner).to_string(), e.name(p.loser).to_string())
}

#[test]
fn ranked_pairs_structures() {
    let [e1, e2, e3] = elections();
    let pair = |a: &str, b: &str| (a.to_string(), b.to_string());

    let r1 = ranked_pairs_tabulate(&e1.scores(), TiePolicy::FlagOnly);
    assert_eq!(r1.winner, Winner::Elected(id(&e1, "A")));
    let m1: Vec<_> = r1.committed.iter().map(|p| pref_names(&e1, p)).collect();
    assert_eq!(m1, [pair("B", "C"), pair("A", "B")]);
    assert_eq!(r1.inferred.len(), 1);
    let inf = &r1.inferred[0];
    assert_eq!((e1.name(inf.winner), e1.name(inf.loser)), ("A", "C"));
    let basis: Vec<_> = inf.basis.iter().map(|p| pref_names(&e1, p)).collect();
    assert_eq!(basis, [pair("A", "B"), pair("B", "C")]);

    let r2 = ranked_pairs_tabulate(&e2.scores(), TiePolicy::FlagOnly);
    assert_eq!(r2.winner, Winner::Elected(id(&e2, "C")));
    let m2: Vec<_> = r2.committed.iter().map(|p| pref_names(&e2, p)).collect();
    assert_eq!(m2, [pair("C", "B"), pair("C", "A")]);
    assert!(r2.inferred.is_empty());

    let r3 = ranked_pairs_tabulate(&e3.scores(), TiePolicy::FlagOnly);
    assert_eq!(r3.winner, Winner::Elected(id(&e3, "A")));
    let m3: Vec<_> = r3.committed.iter().map(|p| pref_names(&e3, p)).collect();
    assert_eq!(m3, [pair("B", "D"), pair("A", "B"), pair("B", "C")]);
    let t3: BTreeSet<_> = r3
        .inferred
        .iter()
        .map(|i| {
            let basis: Vec<_> = i.basis.iter().map(|p| pref_names(&e3, p)).collect();
            (pair(e3.name(i.winner), e3.name(i.loser)), basis)
        })
        .collect();
    let expected: BTreeSet<_> = [
        (pair("A", "D"), vec![pair("A", "B"), pair("B", "D")]),
        (pair("A", "C"), vec![pair("A", "B"), pair("B", "C")]),
    ]
    .into_iter()
    .collect();
    assert_eq!(t3, expected);
    assert!(r3.dag.is_acyclic());
    for w in r3.committed.windows(2) {
        assert!(w[0].score >= w[1].score);
    }
}

#[test]
fn ranked_pairs_assertion_sets() {
    let [e1, e2, e3] = elections();
    let set3 = ranked_pairs_assertions(&ranked_pairs_tabulate(&e3.scores(), TiePolicy::FlagOnly));
    let got: BTreeSet<_> = describe_all(&e3, &set3.assertions).into_iter().collect();
    let want: BTreeSet<String> = [
        "s(A,B) > 0",
        "s(A,B) > s(D,A)",
        "s(B,D) > s(D,A)",
        "s(A,B) > s(C,A)",
        "s(B,C) > s(C,A)",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(set3.len(), 5);
    assert_eq!(got, want);
    assert_eq!(set3.winner, Some(id(&e3, "A")));

    let set1 = ranked_pairs_assertions(&ranked_pairs_tabulate(&e1.scores(), TiePolicy::FlagOnly));
    let got: BTreeSet<_> = describe_all(&e1, &set1.assertions).into_iter().collect();
    let want: BTreeSet<String> = ["s(A,B) > 0", "s(A,B) > s(C,A)", "s(B,C) > s(C,A)"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(got, want);

    let set2 = ranked_pairs_assertions(&ranked_pairs_tabulate(&e2.scores(), TiePolicy::FlagOnly));
    let condorcet = condorcet_assertions(id(&e2, "C"), 3);
    let a: BTreeSet<_> = set2.assertions.iter().cloned().collect();
    let b: BTreeSet<_> = condorcet.assertions.iter().cloned().collect();
    assert_eq!(a, b);
}

#[test]
fn condorcet_sets_have_k_minus_one_members() {
    let [e1, e2, _] = elections();
    let s1 = condorcet_assertions(id(&e1, "A"), 3);
    assert_eq!(
        describe_all(&e1, &s1.assertions),
        ["s(A,B) > 0", "s(A,C) > 0"]
    );
    let s2 = condorcet_assertions(id(&e2, "C"), 3);
    assert_eq!(
        describe_all(&e2, &s2.assertions),
        ["s(C,A) > 0", "s(C,B) > 0"]
    );
    assert_eq!(condorcet_assertions(CandidateId(0), 2).len(), 1);
}

fn minimax_example() -> (Election, ScoreMatrix) {
    let e = Election::from_names(&["A", "B", "C"], &[]).unwrap();
    let s = ScoreMatrix::from_pairs(3, &[(0, 1, 2_000), (1, 2, 5_000), (2, 0, 8_000)]).unwrap();
    (e, s)
}

#[test]
fn minimax_example_set() {
    let (e, s) = minimax_example();
    let mm = minimax_tabulate(&s);
    assert_eq!(mm.winner, Winner::Elected(CandidateId(1)));
    assert_eq!(mm.largest_loss, [8_000, 2_000, 5_000]);
    assert!(!mm.condorcet_case);
    let set = minimax_assertions(&mm, &s);
    let got: BTreeSet<_> = describe_all(&e, &set.assertions).into_iter().collect();
    let want: BTreeSet<String> = ["s(A,B) > s(C,B)", "s(B,C) > s(A,B)", "s(C,A) > s(A,B)"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(got, want);
    assert_eq!(set.winner, Some(CandidateId(1)));

    let [e1, _, _] = elections();
    let mm1 = minimax_tabulate(&e1.scores());
    assert!(mm1.condorcet_case);
    assert_eq!(
        minimax_assertions(&mm1, &e1.scores()).assertions,
        condorcet_assertions(id(&e1, "A"), 3).assertions
    );
}

#[test]
fn smith_examples() {
    let [e1, _, e3] = elections();
    let sm1 = smith_set(&e1.pairwise_tallies());
    assert_eq!(sm1.members, [id(&e1, "A")]);
    let set1 = smith_assertions(&sm1, SmithInner::Minimax, &e1.scores()).unwrap();
    let a: BTreeSet<_> = set1.assertions.iter().cloned().collect();
    let b: BTreeSet<_> = condorcet_assertions(id(&e1, "A"), 3)
        .assertions
        .into_iter()
        .collect();
    assert_eq!(a, b);

    let sm3 = smith_set(&e3.pairwise_tallies());
    assert_eq!(sm3.members.len(), 4);
    let defeats: BTreeSet<_> = sm3
        .inner_defeats
        .iter()
        .map(|d| {
            (
                e3.name(d.candidate).to_string(),
                e3.name(d.defeater).to_string(),
                d.margin,
            )
        })
        .collect();
    let want: BTreeSet<_> = [
        ("A", "D", 7_000),
        ("B", "A", 9_000),
        ("C", "B", 5_000),
        ("D", "B", 13_000),
    ]
    .into_iter()
    .map(|(c, d, m)| (c.to_string(), d.to_string(), m))
    .collect();
    assert_eq!(defeats, want);

    let set3 = smith_assertions(&sm3, SmithInner::Minimax, &e3.scores()).unwrap();
    assert_eq!(set3.winner, Some(id(&e3, "C")));
    let got: BTreeSet<_> = describe_all(&e3, &set3.assertions).into_iter().collect();
    let want: BTreeSet<String> = [
        "s(D,A) > 0",
        "s(A,B) > 0",
        "s(B,C) > 0",
        "s(B,D) > 0",
        "s(B,C) > s(A,C)",
        "s(B,C) > s(D,C)",
        "s(D,A) > s(B,C)",
        "s(A,B) > s(B,C)",
        "s(B,D) > s(B,C)",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(got, want);

    assert!(matches!(
        smith_assertions(&sm3, SmithInner::IrvImport(None), &e3.scores()),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn kemeny_examples() {
    let [e1, e2, e3] = elections();
    let k1 = kemeny_tabulate(&e1.pairwise_tallies(), DEFAULT_MAX_K).unwrap();
    assert_eq!(names(&e1, &k1.best_ranking), ["A", "B", "C"]);
    assert_eq!(k1.best_score, 18_600);
    let k2 = kemeny_tabulate(&e2.pairwise_tallies(), DEFAULT_MAX_K).unwrap();
    assert_eq!(names(&e2, &k2.best_ranking), ["C", "A", "B"]);
    assert_eq!(k2.best_score, 69_000);
    let k3 = kemeny_tabulate(&e3.pairwise_tallies(), DEFAULT_MAX_K).unwrap();
    assert_eq!(names(&e3, &k3.best_ranking), ["A", "B", "C", "D"]);
    assert_eq!(k3.best_score, 98_000);

    assert_eq!(kemeny_assertions(&k1, DEFAULT_MAX_K).unwrap().len(), 4);
    assert_eq!(kemeny_assertions(&k3, DEFAULT_MAX_K).unwrap().len(), 18);
    let two = Election::from_names(&["A", "B"], &[(&["A"], 3)]).unwrap();
    let k = kemeny_tabulate(&two.pairwise_tallies(), DEFAULT_MAX_K).unwrap();
    assert_eq!(kemeny_assertions(&k, DEFAULT_MAX_K).unwrap().len(), 1);
    assert!(matches!(kemeny_assertions(&k3, 3), Err(Error::Capacity(_))));

    let names13: Vec<String> = (0..13).map(|i| format!("C{i}")).collect();
    let wide = Election::new(names13, [(Ballot::of(&[0]).unwrap(), 1)]).unwrap();
    assert!(matches!(
        kemeny_tabulate(&wide.pairwise_tallies(), DEFAULT_MAX_K),
        Err(Error::Capacity(_))
    ));
}

#[test]
fn assorter_examples() {
    let [_, _, e3] = elections();
    let (a, b, d) = (id(&e3, "A"), id(&e3, "B"), id(&e3, "D"));
    let pp = Assertion::PairwisePositive {
        winner: a,
        loser: b,
    };
    assert_eq!(
        pp.assorter_value(&Ballot::new(vec![a, b]).unwrap())
            .unwrap(),
        1.0
    );

    let sc = Assertion::ScoreComparison {
        hi: (a, b),
        lo: (d, a),
    };
    let bcda = Ballot::new(["B", "C", "D", "A"].map(|n| id(&e3, n)).to_vec()).unwrap();
    // B over A (−1), D over A (−1): g = −2.
    assert_eq!(sc.proto_value(&bcda).unwrap(), -2);
    assert_eq!(sc.assorter_value(&bcda).unwrap(), 0.0);
    assert_eq!(sc.assorter_value(&Ballot::empty()).unwrap(), 0.5);
    assert!(Assertion::FullHandCount { reason: "x".into() }
        .assorter_value(&Ballot::empty())
        .is_err());
}

#[test]
fn assertion_json_round_trip_on_election3() {
    let [_, _, e3] = elections();
    let set = ranked_pairs_assertions(&ranked_pairs_tabulate(&e3.scores(), TiePolicy::FlagOnly))
        .for_election(&e3);
    let back = import_assertions(&export_assertions(&set, &e3), &e3).unwrap();
    assert_eq!(back, set);
}
