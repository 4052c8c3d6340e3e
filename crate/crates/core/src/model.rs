//! Candidates, ballots, elections and the pairwise tallies every method is
//! built on.

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Dense index of a candidate within one election (`0..k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

impl CandidateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A (possibly partial, possibly empty) strict ranking of candidates.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ballot(Vec<CandidateId>);

impl Ballot {
    /// Builds a ballot, rejecting repeated candidates.
    pub fn new(ranking: Vec<CandidateId>) -> Result<Self> {
        for (pos, c) in ranking.iter().enumerate() {
            if ranking[..pos].contains(c) {
                return Err(Error::invalid(format!(
                    "candidate {c} appears twice in one ranking"
                )));
            }
        }
        Ok(Ballot(ranking))
    }

    pub fn empty() -> Self {
        Ballot(Vec::new())
    }

    /// Shorthand for tests and fixtures: `Ballot::of(&[0, 2, 1])`.
    pub fn of(indices: &[usize]) -> Result<Self> {
        Ballot::new(indices.iter().copied().map(CandidateId).collect())
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    /// Does this ballot prefer `i` over `j`?
    ///
    /// True when `i` is ranked above `j`, or `i` is ranked and `j` is not.
    /// A ballot that mentions neither prefers neither.
    pub fn prefers(&self, i: CandidateId, j: CandidateId) -> Result<bool> {
        if i == j {
            return Err(Error::invalid(format!(
                "preference between {i} and itself is undefined"
            )));
        }
        Ok(self.prefers_distinct(i, j))
    }

    #[inline]
    pub(crate) fn prefers_distinct(&self, i: CandidateId, j: CandidateId) -> bool {
        for &c in &self.0 {
            if c == i {
                return true;
            }
            if c == j {
                return false;
            }
        }
        false
    }

    /// Rank position per candidate (`usize::MAX` when unranked), for callers
    /// that query many pairs against the same ballot.
    pub(crate) fn rank_table(&self, k: usize) -> Vec<usize> {
        let mut table = vec![usize::MAX; k];
        for (pos, c) in self.0.iter().enumerate() {
            table[c.0] = pos;
        }
        table
    }
}

/// Free-function form of [`Ballot::prefers`].
pub fn prefers(ballot: &Ballot, i: CandidateId, j: CandidateId) -> Result<bool> {
    ballot.prefers(i, j)
}

/// A ranked-vote election: a candidate roster and a multiset of ballots keyed
/// by signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    candidates: Vec<String>,
    profile: BTreeMap<Ballot, u64>,
    total_ballots: u64,
}

impl Election {
    /// Builds an election. Identical signatures are merged and zero counts
    /// dropped.
    pub fn new<I>(candidates: Vec<String>, ballots: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Ballot, u64)>,
    {
        for (pos, name) in candidates.iter().enumerate() {
            if candidates[..pos].contains(name) {
                return Err(Error::invalid(format!("duplicate candidate name {name:?}")));
            }
        }
        let k = candidates.len();
        let mut profile: BTreeMap<Ballot, u64> = BTreeMap::new();
        let mut total: u64 = 0;
        for (ballot, count) in ballots {
            if let Some(c) = ballot.ranking().iter().find(|c| c.0 >= k) {
                return Err(Error::invalid(format!(
                    "ballot references candidate {c} but only {k} candidates exist"
                )));
            }
            if count == 0 {
                continue;
            }
            total = total
                .checked_add(count)
                .ok_or_else(|| Error::invalid("ballot total overflows u64"))?;
            *profile.entry(ballot).or_insert(0) += count;
        }
        Ok(Election {
            candidates,
            profile,
            total_ballots: total,
        })
    }

    /// Builds an election from candidate names and name-keyed rankings.
    pub fn from_names(candidates: &[&str], ballots: &[(&[&str], u64)]) -> Result<Self> {
        let roster: Vec<String> = candidates.iter().map(|s| s.to_string()).collect();
        let mut rows = Vec::with_capacity(ballots.len());
        for (ranking, count) in ballots {
            let ids = ranking
                .iter()
                .map(|name| {
                    roster
                        .iter()
                        .position(|c| c == name)
                        .map(CandidateId)
                        .ok_or_else(|| Error::invalid(format!("unknown candidate {name:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push((Ballot::new(ids)?, *count));
        }
        Election::new(roster, rows)
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.candidates.len()).map(CandidateId)
    }

    pub fn name(&self, id: CandidateId) -> &str {
        &self.candidates[id.0]
    }

    pub fn candidate_id(&self, name: &str) -> Option<CandidateId> {
        self.candidates
            .iter()
            .position(|c| c == name)
            .map(CandidateId)
    }

    pub fn profile(&self) -> &BTreeMap<Ballot, u64> {
        &self.profile
    }

    /// Signatures with their counts, in deterministic (lexicographic) order.
    pub fn signatures(&self) -> impl Iterator<Item = (&Ballot, u64)> {
        self.profile.iter().map(|(b, &n)| (b, n))
    }

    pub fn num_signatures(&self) -> usize {
        self.profile.len()
    }

    pub fn total_ballots(&self) -> u64 {
        self.total_ballots
    }

    pub fn pairwise_tallies(&self) -> PairwiseTallies {
        PairwiseTallies::from_election(self)
    }

    pub fn scores(&self) -> ScoreMatrix {
        self.pairwise_tallies().scores()
    }

    /// Hex SHA-256 over a canonical text rendering of roster and profile.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for name in &self.candidates {
            hasher.update(name.as_bytes());
            hasher.update([0u8]);
        }
        hasher.update([1u8]);
        for (ballot, count) in &self.profile {
            for c in ballot.ranking() {
                hasher.update((c.0 as u64).to_le_bytes());
            }
            hasher.update(u64::MAX.to_le_bytes());
            hasher.update(count.to_le_bytes());
        }
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// Renders a ballot with candidate names, e.g. `[A, B]`.
    pub fn describe_ballot(&self, ballot: &Ballot) -> String {
        let names: Vec<&str> = ballot.ranking().iter().map(|&c| self.name(c)).collect();
        format!("[{}]", names.join(", "))
    }
}

/// `T(i ≻ j)`: number of ballots preferring `i` over `j`, row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseTallies {
    k: usize,
    total_ballots: u64,
    cells: Vec<u64>,
}

impl PairwiseTallies {
    pub fn from_election(election: &Election) -> Self {
        let k = election.num_candidates();
        let mut cells = vec![0u64; k * k];
        let mut mentioned = vec![false; k];
        for (ballot, count) in election.signatures() {
            mentioned.iter_mut().for_each(|m| *m = false);
            for (pos, &c) in ballot.ranking().iter().enumerate() {
                // c beats everyone ranked after it...
                for &later in &ballot.ranking()[pos + 1..] {
                    cells[c.0 * k + later.0] += count;
                }
                mentioned[c.0] = true;
            }
            // ...and everyone the ballot leaves out.
            for &c in ballot.ranking() {
                for (other, seen) in mentioned.iter().enumerate() {
                    if !seen {
                        cells[c.0 * k + other] += count;
                    }
                }
            }
        }
        PairwiseTallies {
            k,
            total_ballots: election.total_ballots(),
            cells,
        }
    }

    /// Builds tallies from explicit rows (diagonal must be zero).
    pub fn from_rows(rows: &[Vec<u64>], total_ballots: u64) -> Result<Self> {
        let k = rows.len();
        let mut cells = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::invalid("tally matrix must be square"));
            }
            if row[i] != 0 {
                return Err(Error::invalid("tally matrix diagonal must be zero"));
            }
            cells.extend_from_slice(row);
        }
        for i in 0..k {
            for j in 0..k {
                if cells[i * k + j] + cells[j * k + i] > total_ballots {
                    return Err(Error::invalid(format!(
                        "T({i}>{j}) + T({j}>{i}) exceeds the ballot total"
                    )));
                }
            }
        }
        Ok(PairwiseTallies {
            k,
            total_ballots,
            cells,
        })
    }

    pub fn num_candidates(&self) -> usize {
        self.k
    }

    pub fn total_ballots(&self) -> u64 {
        self.total_ballots
    }

    #[inline]
    pub fn get(&self, i: CandidateId, j: CandidateId) -> u64 {
        self.cells[i.0 * self.k + j.0]
    }

    pub fn scores(&self) -> ScoreMatrix {
        let k = self.k;
        let mut cells = vec![0i64; k * k];
        for i in 0..k {
            for j in 0..k {
                cells[i * k + j] = self.cells[i * k + j] as i64 - self.cells[j * k + i] as i64;
            }
        }
        ScoreMatrix { k, cells }
    }
}

/// Free-function form of [`Election::pairwise_tallies`].
pub fn pairwise_tallies(election: &Election) -> PairwiseTallies {
    election.pairwise_tallies()
}

/// Free-function form of [`PairwiseTallies::scores`].
pub fn scores(tallies: &PairwiseTallies) -> ScoreMatrix {
    tallies.scores()
}

/// `s(i, j) = T(i ≻ j) − T(j ≻ i)`. Antisymmetric with a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreMatrix {
    k: usize,
    cells: Vec<i64>,
}

impl ScoreMatrix {
    /// Builds a score matrix from the upper triangle given as `(i, j, s(i,j))`
    /// triples; unspecified pairs score zero.
    pub fn from_pairs(k: usize, pairs: &[(usize, usize, i64)]) -> Result<Self> {
        let mut cells = vec![0i64; k * k];
        for &(i, j, s) in pairs {
            if i >= k || j >= k || i == j {
                return Err(Error::invalid(format!("bad score pair ({i}, {j})")));
            }
            cells[i * k + j] = s;
            cells[j * k + i] = -s;
        }
        Ok(ScoreMatrix { k, cells })
    }

    /// Builds a score matrix from full rows, checking antisymmetry.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let k = rows.len();
        let mut cells = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(Error::invalid("score matrix must be square"));
            }
            cells.extend_from_slice(row);
        }
        for i in 0..k {
            for j in 0..k {
                if cells[i * k + j] != -cells[j * k + i] {
                    return Err(Error::invalid("score matrix must be antisymmetric"));
                }
            }
        }
        Ok(ScoreMatrix { k, cells })
    }

    pub fn num_candidates(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: CandidateId, j: CandidateId) -> i64 {
        self.cells[i.0 * self.k + j.0]
    }

    /// The sub-matrix over `subset`, re-indexed densely in the given order.
    pub fn restrict(&self, subset: &[CandidateId]) -> ScoreMatrix {
        let k = subset.len();
        let mut cells = Vec::with_capacity(k * k);
        for &i in subset {
            for &j in subset {
                cells.push(self.get(i, j));
            }
        }
        ScoreMatrix { k, cells }
    }
}
