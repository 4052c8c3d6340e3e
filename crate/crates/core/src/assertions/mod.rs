//! Assertions: linear claims over pairwise tallies whose joint truth implies
//! the reported winner, and their normalized assorters.
//!
//! Each assertion has a proto-assorter `g(b)` with minimum `a < 0`; the
//! assorter is `h(b) = (g(b) − a) / (−2a)`, which lies in `[0, 1]` and has
//! population mean above 1/2 exactly when the claim holds.

mod generate;
mod json;

use std::fmt;
use std::str::FromStr;

pub use generate::{
    assertions_for_method, condorcet_assertions, kemeny_assertions, minimax_assertions,
    ranked_pairs_assertions, smith_assertions, SmithInner,
};
pub use json::{export_assertions, import_assertions};

use crate::error::{Error, Result};
use crate::model::{Ballot, CandidateId, Election, PairwiseTallies};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assertion {
    /// `s(winner, loser) > 0`.
    PairwisePositive {
        winner: CandidateId,
        loser: CandidateId,
    },
    /// `s(hi.0, hi.1) > s(lo.0, lo.1)`.
    ScoreComparison {
        hi: (CandidateId, CandidateId),
        lo: (CandidateId, CandidateId),
    },
    /// `T(preferred) > T(other)` for two complete rankings.
    RankingComparison {
        preferred: Vec<CandidateId>,
        other: Vec<CandidateId>,
    },
    /// No sampling audit is possible; count everything.
    FullHandCount { reason: String },
}

impl Assertion {
    pub fn is_full_hand_count(&self) -> bool {
        matches!(self, Assertion::FullHandCount { .. })
    }

    /// Minimum of the proto-assorter over all ballots (`a`).
    pub fn proto_lower_bound(&self) -> Result<i64> {
        match self {
            Assertion::PairwisePositive { .. } => Ok(-1),
            Assertion::ScoreComparison { .. } => Ok(-2),
            Assertion::RankingComparison { preferred, .. } => {
                let k = preferred.len() as i64;
                Ok(-(k * (k - 1) / 2).max(1))
            }
            Assertion::FullHandCount { .. } => Err(full_count_error()),
        }
    }

    /// Proto-assorter `g(b)`: the ballot's signed contribution to the claim.
    pub fn proto_value(&self, ballot: &Ballot) -> Result<i64> {
        let p = |i, j| i64::from(ballot.prefers_distinct(i, j));
        match self {
            Assertion::PairwisePositive { winner, loser } => {
                Ok(p(*winner, *loser) - p(*loser, *winner))
            }
            Assertion::ScoreComparison { hi, lo } => {
                let (i, j) = *hi;
                let (k, l) = *lo;
                Ok(p(i, j) + p(l, k) - p(k, l) - p(j, i))
            }
            Assertion::RankingComparison { preferred, other } => {
                let k = preferred.len();
                let rank = ballot.rank_table(k);
                Ok(agreement(preferred, &rank) - agreement(other, &rank))
            }
            Assertion::FullHandCount { .. } => Err(full_count_error()),
        }
    }

    /// Normalized assorter `h(b) ∈ [0, 1]`.
    pub fn assorter_value(&self, ballot: &Ballot) -> Result<f64> {
        let g = self.proto_value(ballot)?;
        let a = self.proto_lower_bound()?;
        Ok((g - a) as f64 / (-2 * a) as f64)
    }

    /// Left side minus right side of the claim on exact tallies. The claim
    /// holds iff this is positive.
    pub fn tally_margin(&self, tallies: &PairwiseTallies) -> Result<i64> {
        let t = |i, j| tallies.get(i, j) as i64;
        let s = |i, j| t(i, j) - t(j, i);
        match self {
            Assertion::PairwisePositive { winner, loser } => Ok(s(*winner, *loser)),
            Assertion::ScoreComparison { hi, lo } => Ok(s(hi.0, hi.1) - s(lo.0, lo.1)),
            Assertion::RankingComparison { preferred, other } => {
                let score = |r: &[CandidateId]| crate::tabulation::ranking_score(tallies, r) as i64;
                Ok(score(preferred) - score(other))
            }
            Assertion::FullHandCount { .. } => Err(full_count_error()),
        }
    }

    /// Checks the structural invariants against a `k`-candidate roster.
    pub fn validate(&self, k: usize) -> Result<()> {
        let in_range = |c: &CandidateId| c.0 < k;
        let bad = |msg: &str| Err(Error::invalid(msg.to_string()));
        match self {
            Assertion::PairwisePositive { winner, loser } => {
                if !in_range(winner) || !in_range(loser) {
                    return bad("candidate out of range");
                }
                if winner == loser {
                    return bad("pairwise assertion compares a candidate with itself");
                }
            }
            Assertion::ScoreComparison { hi, lo } => {
                if ![hi.0, hi.1, lo.0, lo.1].iter().all(in_range) {
                    return bad("candidate out of range");
                }
                if hi.0 == hi.1 || lo.0 == lo.1 {
                    return bad("score pair compares a candidate with itself");
                }
                if hi == lo {
                    return bad("score comparison has identical sides");
                }
            }
            Assertion::RankingComparison { preferred, other } => {
                let is_perm = |r: &[CandidateId]| {
                    let mut seen = vec![false; k];
                    r.len() == k
                        && r.iter()
                            .all(|c| in_range(c) && !std::mem::replace(&mut seen[c.0], true))
                };
                if !is_perm(preferred) || !is_perm(other) {
                    return bad("ranking comparison needs two complete rankings");
                }
                if preferred.first() == other.first() {
                    return bad("compared rankings share their first candidate");
                }
            }
            Assertion::FullHandCount { .. } => {}
        }
        Ok(())
    }

    /// Re-indexes candidates through `map` (sub-election index → election id).
    pub(crate) fn remap(&self, map: &[CandidateId]) -> Assertion {
        let m = |c: CandidateId| map[c.0];
        match self {
            Assertion::PairwisePositive { winner, loser } => Assertion::PairwisePositive {
                winner: m(*winner),
                loser: m(*loser),
            },
            Assertion::ScoreComparison { hi, lo } => Assertion::ScoreComparison {
                hi: (m(hi.0), m(hi.1)),
                lo: (m(lo.0), m(lo.1)),
            },
            Assertion::RankingComparison { preferred, other } => Assertion::RankingComparison {
                preferred: preferred.iter().copied().map(m).collect(),
                other: other.iter().copied().map(m).collect(),
            },
            Assertion::FullHandCount { reason } => Assertion::FullHandCount {
                reason: reason.clone(),
            },
        }
    }

    /// Human-readable form using candidate names, e.g. `s(A,B) > s(D,A)`.
    pub fn describe(&self, election: &Election) -> String {
        let n = |c: CandidateId| election.name(c);
        let r = |v: &[CandidateId]| v.iter().map(|&c| n(c)).collect::<Vec<_>>().join(",");
        match self {
            Assertion::PairwisePositive { winner, loser } => {
                format!("s({},{}) > 0", n(*winner), n(*loser))
            }
            Assertion::ScoreComparison { hi, lo } => {
                format!("s({},{}) > s({},{})", n(hi.0), n(hi.1), n(lo.0), n(lo.1))
            }
            Assertion::RankingComparison { preferred, other } => {
                format!("T([{}]) > T([{}])", r(preferred), r(other))
            }
            Assertion::FullHandCount { reason } => format!("full hand count: {reason}"),
        }
    }
}

/// Free-function form of [`Assertion::assorter_value`].
pub fn assorter_value(assertion: &Assertion, ballot: &Ballot) -> Result<f64> {
    assertion.assorter_value(ballot)
}

fn full_count_error() -> Error {
    Error::invalid("a full hand count assertion has no assorter")
}

/// Ordered pairs `(x, y)`, `x` above `y` in `ranking`, that the ballot with
/// rank table `rank` also prefers.
fn agreement(ranking: &[CandidateId], rank: &[usize]) -> i64 {
    let mut n = 0;
    for (pos, x) in ranking.iter().enumerate() {
        for y in &ranking[pos + 1..] {
            if rank[x.0] < rank[y.0] {
                n += 1;
            }
        }
    }
    n
}

/// Election method an assertion set audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Irv,
    Condorcet,
    RankedPairs,
    Minimax,
    SmithMinimax,
    SmithIrv,
    Kemeny,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Irv,
        Method::Condorcet,
        Method::RankedPairs,
        Method::Minimax,
        Method::SmithMinimax,
        Method::SmithIrv,
        Method::Kemeny,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Irv => "irv",
            Method::Condorcet => "condorcet",
            Method::RankedPairs => "ranked-pairs",
            Method::Minimax => "minimax",
            Method::SmithMinimax => "smith-minimax",
            Method::SmithIrv => "smith-irv",
            Method::Kemeny => "kemeny",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetMetadata {
    pub election_digest: Option<String>,
    pub parameters: std::collections::BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssertionSet {
    pub method: Method,
    pub winner: Option<CandidateId>,
    pub assertions: Vec<Assertion>,
    pub metadata: SetMetadata,
}

impl AssertionSet {
    /// Builds a set, dropping duplicate assertions. If any assertion is a
    /// full hand count the set collapses to that one assertion.
    pub fn new(method: Method, winner: Option<CandidateId>, assertions: Vec<Assertion>) -> Self {
        let assertions = match assertions.iter().find(|a| a.is_full_hand_count()) {
            Some(fhc) => vec![fhc.clone()],
            None => {
                let mut unique: Vec<Assertion> = Vec::with_capacity(assertions.len());
                for a in assertions {
                    if !unique.contains(&a) {
                        unique.push(a);
                    }
                }
                unique
            }
        };
        AssertionSet {
            method,
            winner,
            assertions,
            metadata: SetMetadata::default(),
        }
    }

    pub fn full_hand_count(method: Method, reason: impl Into<String>) -> Self {
        AssertionSet::new(
            method,
            None,
            vec![Assertion::FullHandCount {
                reason: reason.into(),
            }],
        )
    }

    pub fn requires_full_hand_count(&self) -> bool {
        self.assertions.iter().any(Assertion::is_full_hand_count)
    }

    pub fn len(&self) -> usize {
        self.assertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assertions.is_empty()
    }

    /// Records the election digest in the metadata.
    pub fn for_election(mut self, election: &Election) -> Self {
        self.metadata.election_digest = Some(election.digest());
        self
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata
            .parameters
            .insert(key.to_string(), value.to_string());
        self
    }
}
