use super::TiePolicy;
use crate::error::{Error, Result};
use crate::model::{CandidateId, Election};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrvRound {
    /// Tallies of the candidates still standing, in index order.
    pub tallies: Vec<(CandidateId, u64)>,
    /// Ballots with no continuing candidate at the start of this round.
    pub exhausted: u64,
    /// Candidate eliminated at the end of the round; `None` in the final one.
    pub eliminated: Option<CandidateId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrvResult {
    pub winner: CandidateId,
    pub elimination_order: Vec<CandidateId>,
    pub rounds: Vec<IrvRound>,
    pub tie_flag: bool,
}

/// Instant-runoff count: eliminate the lowest tally until one candidate
/// holds a majority of the continuing ballots or stands alone.
pub fn irv_tabulate(election: &Election, tie_policy: TiePolicy) -> Result<IrvResult> {
    let k = election.num_candidates();
    if k == 0 {
        return Err(Error::invalid("IRV needs at least one candidate"));
    }
    let mut standing = vec![true; k];
    let mut remaining = k;
    let mut elimination_order = Vec::new();
    let mut rounds = Vec::new();
    let mut tie_flag = false;

    loop {
        let mut tallies = vec![0u64; k];
        let mut exhausted = 0u64;
        for (ballot, count) in election.signatures() {
            match ballot.ranking().iter().find(|c| standing[c.0]) {
                Some(c) => tallies[c.0] += count,
                None => exhausted += count,
            }
        }
        let active: u64 = tallies.iter().sum();
        let round_tallies: Vec<(CandidateId, u64)> = (0..k)
            .filter(|&c| standing[c])
            .map(|c| (CandidateId(c), tallies[c]))
            .collect();

        let leader = round_tallies
            .iter()
            .find(|&&(_, t)| 2 * t > active)
            .map(|&(c, _)| c);
        if let Some(winner) = leader.or_else(|| (remaining == 1).then(|| round_tallies[0].0)) {
            rounds.push(IrvRound {
                tallies: round_tallies,
                exhausted,
                eliminated: None,
            });
            return Ok(IrvResult {
                winner,
                elimination_order,
                rounds,
                tie_flag,
            });
        }

        let lowest = round_tallies
            .iter()
            .map(|&(_, t)| t)
            .min()
            .expect("someone stands");
        let mut tied = round_tallies.iter().filter(|&&(_, t)| t == lowest);
        let (loser, _) = *tied.next().expect("minimum exists");
        if tied.next().is_some() && tie_policy == TiePolicy::FlagOnly {
            tie_flag = true;
        }
        standing[loser.0] = false;
        remaining -= 1;
        elimination_order.push(loser);
        rounds.push(IrvRound {
            tallies: round_tallies,
            exhausted,
            eliminated: Some(loser),
        });
    }
}
