use super::{condorcet_winner, Winner};
use crate::model::{CandidateId, ScoreMatrix};

/// Minimax under margins scoring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimaxResult {
    pub winner: Winner,
    /// `LL(c) = max over c' of s(c', c)`. Negative for a Condorcet winner.
    pub largest_loss: Vec<i64>,
    /// Strongest defeater of each candidate that loses at least one contest.
    pub strongest_defeater: Vec<Option<CandidateId>>,
    pub condorcet_case: bool,
}

pub fn minimax_tabulate(scores: &ScoreMatrix) -> MinimaxResult {
    let k = scores.num_candidates();
    let ids = || (0..k).map(CandidateId);

    let largest_loss: Vec<i64> = ids()
        .map(|c| {
            ids()
                .filter(|&d| d != c)
                .map(|d| scores.get(d, c))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let strongest_defeater = ids()
        .map(|c| {
            let mut best: Option<(CandidateId, i64)> = None;
            for d in ids().filter(|&d| d != c) {
                let s = scores.get(d, c);
                if s > 0 && best.is_none_or(|(_, b)| s > b) {
                    best = Some((d, s));
                }
            }
            best.map(|(d, _)| d)
        })
        .collect();

    let condorcet = condorcet_winner(scores);
    let winner = match condorcet {
        Some(w) => Winner::Elected(w),
        None => {
            let min = largest_loss.iter().copied().min().unwrap_or(0);
            let mut at_min = ids().filter(|c| largest_loss[c.0] == min);
            match (at_min.next(), at_min.next()) {
                (Some(w), None) => Winner::Elected(w),
                _ => Winner::FullHandCount(format!(
                    "several candidates share the smallest largest loss ({min})"
                )),
            }
        }
    };

    MinimaxResult {
        winner,
        largest_loss,
        strongest_defeater,
        condorcet_case: condorcet.is_some(),
    }
}
