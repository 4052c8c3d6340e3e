use crate::model::{CandidateId, PairwiseTallies};

/// The in-set defeat chosen for a Smith set member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InnerDefeat {
    pub candidate: CandidateId,
    pub defeater: CandidateId,
    pub margin: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithResult {
    /// Members in index order.
    pub members: Vec<CandidateId>,
    /// For each member with an in-set defeater, the one with largest margin.
    pub inner_defeats: Vec<InnerDefeat>,
    /// Some pair of members ties.
    pub tie_flag: bool,
}

impl SmithResult {
    pub fn contains(&self, c: CandidateId) -> bool {
        self.members.contains(&c)
    }
}

/// Smallest set whose members all strictly beat every non-member.
///
/// Seeded with the candidates of maximal Copeland score, then grown by any
/// outsider that beats or ties a member until nothing changes.
pub fn smith_set(tallies: &PairwiseTallies) -> SmithResult {
    let scores = tallies.scores();
    let k = tallies.num_candidates();
    let ids = || (0..k).map(CandidateId);

    // Copeland score doubled: 2 per win, 1 per tie.
    let copeland: Vec<i64> = ids()
        .map(|c| {
            ids()
                .filter(|&d| d != c)
                .map(|d| match scores.get(c, d) {
                    s if s > 0 => 2,
                    0 => 1,
                    _ => 0,
                })
                .sum()
        })
        .collect();
    let best = copeland.iter().copied().max().unwrap_or(0);
    let mut inside: Vec<bool> = copeland.iter().map(|&s| s == best && k > 0).collect();

    loop {
        let joiner = ids()
            .find(|&out| !inside[out.0] && ids().any(|m| inside[m.0] && scores.get(m, out) <= 0));
        match joiner {
            Some(c) => inside[c.0] = true,
            None => break,
        }
    }

    let members: Vec<CandidateId> = ids().filter(|c| inside[c.0]).collect();
    let mut tie_flag = false;
    let mut inner_defeats = Vec::new();
    for &c in &members {
        let mut best: Option<(CandidateId, i64)> = None;
        for &d in members.iter().filter(|&&d| d != c) {
            let margin = scores.get(d, c);
            if margin == 0 {
                tie_flag = true;
            }
            if margin > 0 && best.is_none_or(|(_, b)| margin > b) {
                best = Some((d, margin));
            }
        }
        if let Some((defeater, margin)) = best {
            inner_defeats.push(InnerDefeat {
                candidate: c,
                defeater,
                margin,
            });
        }
    }

    SmithResult {
        members,
        inner_defeats,
        tie_flag,
    }
}
