use crate::error::{Error, Result};
use crate::model::{CandidateId, PairwiseTallies};
use crate::parallel;
use crate::permutation::next_permutation;

/// Largest candidate count enumerated by default (8! = 40320 rankings).
pub const DEFAULT_MAX_K: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KemenyResult {
    pub best_ranking: Vec<CandidateId>,
    pub best_score: u64,
    pub winner: CandidateId,
    /// More than one ranking attains the best score.
    pub tie_flag: bool,
    /// Tied best rankings disagree on who comes first.
    pub winner_ambiguous: bool,
}

/// `T(π)`: sum of `T(x ≻ y)` over every pair with `x` above `y` in `ranking`.
pub fn ranking_score(tallies: &PairwiseTallies, ranking: &[CandidateId]) -> u64 {
    let mut total = 0;
    for (pos, &x) in ranking.iter().enumerate() {
        for &y in &ranking[pos + 1..] {
            total += tallies.get(x, y);
        }
    }
    total
}

#[derive(Clone, Debug)]
struct Best {
    ranking: Vec<CandidateId>,
    score: u64,
    ties: usize,
    firsts: Vec<CandidateId>,
}

impl Best {
    fn offer(&mut self, ranking: &[CandidateId], score: u64) {
        if score > self.score || self.ranking.is_empty() {
            self.ranking = ranking.to_vec();
            self.score = score;
            self.ties = 1;
            self.firsts = vec![ranking[0]];
        } else if score == self.score {
            self.ties += 1;
            if !self.firsts.contains(&ranking[0]) {
                self.firsts.push(ranking[0]);
            }
        }
    }

    /// Folds a later (lexicographically greater) partition into this one.
    fn merge(mut self, later: Best) -> Best {
        if later.ranking.is_empty() {
            return self;
        }
        if self.ranking.is_empty() || later.score > self.score {
            return later;
        }
        if later.score == self.score {
            self.ties += later.ties;
            for f in later.firsts {
                if !self.firsts.contains(&f) {
                    self.firsts.push(f);
                }
            }
        }
        self
    }
}

/// Exhaustive Kemeny-Young over all `k!` complete rankings. Ties go to the
/// lexicographically smallest ranking.
pub fn kemeny_tabulate(tallies: &PairwiseTallies, max_k: usize) -> Result<KemenyResult> {
    let k = tallies.num_candidates();
    if k > max_k {
        return Err(Error::Capacity(format!(
            "{k} candidates exceeds the Kemeny-Young limit of {max_k}; \
             exhaustive ranking enumeration and its audit grow factorially"
        )));
    }
    if k == 0 {
        return Err(Error::invalid("Kemeny-Young needs at least one candidate"));
    }

    let partitions = parallel::map_range(k, |first| {
        let mut rest: Vec<usize> = (0..k).filter(|&c| c != first).collect();
        let mut best = Best {
            ranking: Vec::new(),
            score: 0,
            ties: 0,
            firsts: Vec::new(),
        };
        let mut ranking = Vec::with_capacity(k);
        loop {
            ranking.clear();
            ranking.push(CandidateId(first));
            ranking.extend(rest.iter().copied().map(CandidateId));
            best.offer(&ranking, ranking_score(tallies, &ranking));
            if !next_permutation(&mut rest) {
                break;
            }
        }
        best
    });
    let best = partitions
        .into_iter()
        .reduce(Best::merge)
        .expect("at least one candidate");

    Ok(KemenyResult {
        winner: best.ranking[0],
        best_ranking: best.ranking,
        best_score: best.score,
        tie_flag: best.ties > 1,
        winner_ambiguous: best.firsts.len() > 1,
    })
}
