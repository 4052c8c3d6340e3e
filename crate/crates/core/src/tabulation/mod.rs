//! Winner determination for IRV and the Condorcet family, keeping the
//! intermediate structures the audit needs.

mod irv;
mod kemeny;
mod minimax;
mod ranked_pairs;
mod smith;

pub use irv::{irv_tabulate, IrvResult, IrvRound};
pub use kemeny::{kemeny_tabulate, ranking_score, KemenyResult, DEFAULT_MAX_K};
pub use minimax::{minimax_tabulate, MinimaxResult};
pub use ranked_pairs::{
    ranked_pairs_tabulate, Inference, Preference, PreferenceGraph, RankedPairsResult,
    MAX_TIE_ORDERINGS,
};
pub use smith::{smith_set, InnerDefeat, SmithResult};

use crate::model::{CandidateId, ScoreMatrix};

/// How a method treats ties that the count alone cannot break.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TiePolicy {
    /// Break ties by lowest candidate index and treat the result as settled.
    Lexicographic,
    /// Report the ambiguity. IRV still breaks elimination ties by index but
    /// raises `tie_flag`; Ranked Pairs searches the tied orderings and falls
    /// back to a full hand count when the winner depends on them.
    #[default]
    FlagOnly,
}

/// Result of a tabulation that may be unable to name a winner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Winner {
    Elected(CandidateId),
    FullHandCount(String),
}

impl Winner {
    pub fn elected(&self) -> Option<CandidateId> {
        match self {
            Winner::Elected(c) => Some(*c),
            Winner::FullHandCount(_) => None,
        }
    }

    pub fn is_full_hand_count(&self) -> bool {
        matches!(self, Winner::FullHandCount(_))
    }
}

/// The candidate `w` with `s(w, c) > 0` for every other `c`, if there is one.
pub fn condorcet_winner(scores: &ScoreMatrix) -> Option<CandidateId> {
    let k = scores.num_candidates();
    (0..k).map(CandidateId).find(|&w| {
        (0..k)
            .map(CandidateId)
            .all(|c| c == w || scores.get(w, c) > 0)
    })
}
