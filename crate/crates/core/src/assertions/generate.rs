//! Per-method assertion generation.

use super::{Assertion, AssertionSet, Method};
use crate::error::{Error, Result};
use crate::model::{CandidateId, Election, ScoreMatrix};
use crate::tabulation::{
    condorcet_winner, kemeny_tabulate, minimax_tabulate, ranked_pairs_tabulate, smith_set,
    KemenyResult, MinimaxResult, RankedPairsResult, SmithResult, TiePolicy, Winner,
};

/// Tabulates `election` under `method` and builds its assertion set, stamped
/// with the election digest.
///
/// `irv` and `smith-irv` audit externally generated IRV assertions passed in
/// `imported`: the whole set for `irv`, the part over the Smith set for
/// `smith-irv`. Kemeny-Young refuses more than `kemeny_limit` candidates.
pub fn assertions_for_method(
    method: Method,
    election: &Election,
    imported: Option<&AssertionSet>,
    kemeny_limit: usize,
) -> Result<AssertionSet> {
    let k = election.num_candidates();
    let set = match method {
        Method::Irv => {
            let set = imported.ok_or_else(|| {
                Error::invalid("irv needs an imported assertion set; this tool does not generate IRV assertions")
            })?;
            let mut set = set.clone();
            set.method = Method::Irv;
            set
        }
        Method::Condorcet => match condorcet_winner(&election.scores()) {
            Some(w) => condorcet_assertions(w, k),
            None => AssertionSet::full_hand_count(method, "there is no Condorcet winner"),
        },
        Method::RankedPairs => ranked_pairs_assertions(&ranked_pairs_tabulate(
            &election.scores(),
            TiePolicy::FlagOnly,
        )),
        Method::Minimax => {
            let scores = election.scores();
            minimax_assertions(&minimax_tabulate(&scores), &scores)
        }
        Method::SmithMinimax => smith_assertions(
            &smith_set(&election.pairwise_tallies()),
            SmithInner::Minimax,
            &election.scores(),
        )?,
        Method::SmithIrv => smith_assertions(
            &smith_set(&election.pairwise_tallies()),
            SmithInner::IrvImport(imported),
            &election.scores(),
        )?,
        Method::Kemeny => {
            if k > kemeny_limit {
                return Err(Error::Capacity(format!(
                    "{k} candidates would need {} Kemeny-Young assertions; the limit is {kemeny_limit} candidates",
                    kemeny_assertion_count(k)
                )));
            }
            kemeny_assertions(
                &kemeny_tabulate(&election.pairwise_tallies(), kemeny_limit)?,
                kemeny_limit,
            )?
        }
    };
    Ok(set.for_election(election))
}

/// `s(w, c) > 0` for every other candidate `c`.
pub fn condorcet_assertions(winner: CandidateId, num_candidates: usize) -> AssertionSet {
    AssertionSet::new(
        Method::Condorcet,
        Some(winner),
        pairwise_against_all(winner, num_candidates),
    )
}

fn pairwise_against_all(winner: CandidateId, k: usize) -> Vec<Assertion> {
    (0..k)
        .map(CandidateId)
        .filter(|&c| c != winner)
        .map(|loser| Assertion::PairwisePositive { winner, loser })
        .collect()
}

/// Commits from the winner must be positive majorities, and every pair on the
/// basis of an inference `w ≻ c` must outscore `(c, w)`.
pub fn ranked_pairs_assertions(rp: &RankedPairsResult) -> AssertionSet {
    let w = match &rp.winner {
        Winner::Elected(w) => *w,
        Winner::FullHandCount(reason) => {
            return AssertionSet::full_hand_count(Method::RankedPairs, reason.clone())
        }
    };
    let mut out = Vec::new();
    for p in rp.committed.iter().filter(|p| p.winner == w) {
        out.push(Assertion::PairwisePositive {
            winner: w,
            loser: p.loser,
        });
    }
    for inference in rp.inferred.iter().filter(|t| t.winner == w) {
        for step in &inference.basis {
            out.push(Assertion::ScoreComparison {
                hi: (step.winner, step.loser),
                lo: (inference.loser, w),
            });
        }
    }
    AssertionSet::new(Method::RankedPairs, Some(w), out)
}

/// Condorcet assertions when there is a Condorcet winner; otherwise show
/// which defeat is the winner's strongest and that every other candidate's
/// strongest defeat is larger still.
pub fn minimax_assertions(mm: &MinimaxResult, scores: &ScoreMatrix) -> AssertionSet {
    let method = Method::Minimax;
    let w = match &mm.winner {
        Winner::Elected(w) => *w,
        Winner::FullHandCount(reason) => {
            return AssertionSet::full_hand_count(method, reason.clone())
        }
    };
    let k = scores.num_candidates();
    if mm.condorcet_case {
        return AssertionSet::new(method, Some(w), pairwise_against_all(w, k));
    }
    let Some(dw) = mm.strongest_defeater[w.0] else {
        return AssertionSet::full_hand_count(
            method,
            "the minimax winner ties without losing, so its strongest defeat is undefined",
        );
    };
    let mut out = Vec::new();
    for c in (0..k).map(CandidateId).filter(|&c| c != w && c != dw) {
        out.push(Assertion::ScoreComparison {
            hi: (dw, w),
            lo: (c, w),
        });
    }
    for x in (0..k).map(CandidateId).filter(|&x| x != w) {
        let Some(dx) = mm.strongest_defeater[x.0] else {
            return AssertionSet::full_hand_count(
                method,
                format!("candidate {} has no pairwise defeat", x.0),
            );
        };
        out.push(Assertion::ScoreComparison {
            hi: (dx, x),
            lo: (dw, w),
        });
    }
    AssertionSet::new(method, Some(w), out)
}

/// Second-stage rule applied inside the Smith set.
#[derive(Clone, Copy, Debug)]
pub enum SmithInner<'a> {
    Minimax,
    /// Externally generated IRV assertions over the Smith set.
    IrvImport(Option<&'a AssertionSet>),
}

/// Smith-set verification plus the inner method's assertions.
pub fn smith_assertions(
    sm: &SmithResult,
    inner: SmithInner<'_>,
    scores: &ScoreMatrix,
) -> Result<AssertionSet> {
    let method = match inner {
        SmithInner::Minimax => Method::SmithMinimax,
        SmithInner::IrvImport(_) => Method::SmithIrv,
    };
    if let SmithInner::IrvImport(None) = inner {
        return Err(Error::invalid(
            "smith-irv needs an imported IRV assertion set over the Smith set",
        ));
    }
    if sm.tie_flag {
        return Ok(AssertionSet::full_hand_count(
            method,
            "two members of the Smith set tie",
        ));
    }
    let k = scores.num_candidates();
    let mut out = Vec::new();
    for &c in &sm.members {
        for outsider in (0..k).map(CandidateId).filter(|o| !sm.contains(*o)) {
            out.push(Assertion::PairwisePositive {
                winner: c,
                loser: outsider,
            });
        }
    }
    for d in &sm.inner_defeats {
        out.push(Assertion::PairwisePositive {
            winner: d.defeater,
            loser: d.candidate,
        });
    }

    let winner = match inner {
        SmithInner::Minimax => {
            let sub = scores.restrict(&sm.members);
            let mm = minimax_tabulate(&sub);
            let set = minimax_assertions(&mm, &sub);
            out.extend(set.assertions.iter().map(|a| a.remap(&sm.members)));
            set.winner.map(|w| sm.members[w.0])
        }
        SmithInner::IrvImport(Some(imported)) => {
            if let Some(w) = imported.winner.filter(|w| !sm.contains(*w)) {
                return Err(Error::invalid(format!(
                    "imported IRV winner {w} is not in the Smith set"
                )));
            }
            out.extend(imported.assertions.iter().cloned());
            imported.winner
        }
        SmithInner::IrvImport(None) => unreachable!("checked above"),
    };
    Ok(AssertionSet::new(method, winner, out))
}

/// `T(π_r) > T(π')` for every complete ranking `π'` led by someone else.
pub fn kemeny_assertions(kr: &KemenyResult, k_limit: usize) -> Result<AssertionSet> {
    let k = kr.best_ranking.len();
    if k > k_limit {
        return Err(Error::Capacity(format!(
            "{k} candidates would need {} Kemeny-Young assertions; the limit is {k_limit} candidates",
            kemeny_assertion_count(k)
        )));
    }
    if kr.winner_ambiguous {
        return Ok(AssertionSet::full_hand_count(
            Method::Kemeny,
            "tied best rankings are led by different candidates",
        ));
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        if perm.first() != Some(&kr.winner.0) {
            out.push(Assertion::RankingComparison {
                preferred: kr.best_ranking.clone(),
                other: perm.iter().copied().map(CandidateId).collect(),
            });
        }
        if !crate::permutation::next_permutation(&mut perm) {
            break;
        }
    }
    Ok(AssertionSet::new(Method::Kemeny, Some(kr.winner), out))
}

/// `k! − (k−1)!` as a float, so it does not overflow for large `k`.
fn kemeny_assertion_count(k: usize) -> f64 {
    let fact = |n: usize| (1..=n).map(|i| i as f64).product::<f64>();
    fact(k) - fact(k.saturating_sub(1))
}
