//! Ranked Pairs with the commit set, transitive inferences and their bases
//! recorded up to the moment the winner is established.

use std::collections::{BTreeSet, VecDeque};

use super::{TiePolicy, Winner};
use crate::model::{CandidateId, ScoreMatrix};
use crate::permutation::next_permutation;

/// Upper bound on tie-block orderings explored before giving up and asking
/// for a full hand count.
pub const MAX_TIE_ORDERINGS: usize = 10_000;

/// A pairwise preference `winner ≻ loser` with its score `s(winner, loser)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preference {
    pub winner: CandidateId,
    pub loser: CandidateId,
    pub score: i64,
}

/// A preference inferred by transitivity, with the committed path behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inference {
    pub winner: CandidateId,
    pub loser: CandidateId,
    pub basis: Vec<Preference>,
}

/// Directed acyclic graph of committed preferences. Out-edges are kept in
/// commit order so path searches are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceGraph {
    out: Vec<Vec<Preference>>,
}

impl PreferenceGraph {
    fn new(k: usize) -> Self {
        PreferenceGraph {
            out: vec![Vec::new(); k],
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.out.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Preference> {
        self.out.iter().flatten()
    }

    pub fn has_edge(&self, from: CandidateId, to: CandidateId) -> bool {
        self.out[from.0].iter().any(|p| p.loser == to)
    }

    fn add(&mut self, p: Preference) {
        self.out[p.winner.0].push(p);
    }

    /// Shortest path (in edges) from `from` to `to`, found breadth-first.
    pub fn path(&self, from: CandidateId, to: CandidateId) -> Option<Vec<Preference>> {
        let k = self.out.len();
        let mut via: Vec<Option<Preference>> = vec![None; k];
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([from]);
        seen[from.0] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = Vec::new();
                let mut cur = to;
                while let Some(edge) = via[cur.0] {
                    path.push(edge);
                    cur = edge.winner;
                }
                path.reverse();
                return Some(path);
            }
            for edge in &self.out[v.0] {
                if !seen[edge.loser.0] {
                    seen[edge.loser.0] = true;
                    via[edge.loser.0] = Some(*edge);
                    queue.push_back(edge.loser);
                }
            }
        }
        None
    }

    pub fn reaches(&self, from: CandidateId, to: CandidateId) -> bool {
        self.path(from, to).is_some()
    }

    /// Candidates reachable from `from`, excluding itself, in BFS order.
    pub fn reachable(&self, from: CandidateId) -> Vec<CandidateId> {
        let mut seen = vec![false; self.out.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([from]);
        seen[from.0] = true;
        while let Some(v) = queue.pop_front() {
            for edge in &self.out[v.0] {
                if !seen[edge.loser.0] {
                    seen[edge.loser.0] = true;
                    order.push(edge.loser);
                    queue.push_back(edge.loser);
                }
            }
        }
        order
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.out.len())
            .map(CandidateId)
            .all(|c| self.out[c.0].iter().all(|e| !self.reaches(e.loser, c)))
    }

    fn source_of_all(&self) -> Option<CandidateId> {
        let k = self.out.len();
        (0..k)
            .map(CandidateId)
            .find(|&c| self.reachable(c).len() + 1 == k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPairsResult {
    pub winner: Winner,
    /// Committed preferences in commit order (`M`).
    pub committed: Vec<Preference>,
    /// Transitive inferences at the stopping point (`T`), each with a basis.
    /// Inferences from the winner come first.
    pub inferred: Vec<Inference>,
    /// Positive majorities skipped because the opposite path already existed.
    pub skipped: Vec<Preference>,
    pub dag: PreferenceGraph,
    /// Tied scores were met before the winner was established.
    pub tie_flag: bool,
}

#[derive(Clone)]
struct Run {
    dag: PreferenceGraph,
    committed: Vec<Preference>,
    skipped: Vec<Preference>,
    winner: Option<CandidateId>,
    /// Number of majorities consumed before stopping.
    consumed: usize,
}

impl Run {
    fn new(k: usize) -> Self {
        let dag = PreferenceGraph::new(k);
        let winner = dag.source_of_all();
        Run {
            dag,
            committed: Vec::new(),
            skipped: Vec::new(),
            winner,
            consumed: 0,
        }
    }

    /// Committed edges as an order-free key.
    fn key(&self) -> Vec<(CandidateId, CandidateId)> {
        let mut edges: Vec<_> = self.committed.iter().map(|p| (p.winner, p.loser)).collect();
        edges.sort_unstable();
        edges
    }

    /// Processes one majority. Returns `true` once a winner is established.
    fn step(&mut self, p: Preference) -> bool {
        if self.winner.is_some() {
            return true;
        }
        self.consumed += 1;
        if self.dag.reaches(p.loser, p.winner) {
            self.skipped.push(p);
        } else {
            self.dag.add(p);
            self.committed.push(p);
            self.winner = self.dag.source_of_all();
        }
        self.winner.is_some()
    }
}

fn positive_majorities(scores: &ScoreMatrix) -> Vec<Preference> {
    let k = scores.num_candidates();
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let score = scores.get(CandidateId(i), CandidateId(j));
            if score > 0 {
                out.push(Preference {
                    winner: CandidateId(i),
                    loser: CandidateId(j),
                    score,
                });
            }
        }
    }
    out.sort_by(|a, b| {
        b.score
            .cmp(&a.score)
            .then(a.winner.cmp(&b.winner))
            .then(a.loser.cmp(&b.loser))
    });
    out
}

/// Splits the sorted majorities into runs of equal score.
fn tie_blocks(sorted: &[Preference]) -> Vec<&[Preference]> {
    sorted.chunk_by(|a, b| a.score == b.score).collect()
}

pub fn ranked_pairs_tabulate(scores: &ScoreMatrix, tie_policy: TiePolicy) -> RankedPairsResult {
    let k = scores.num_candidates();
    let majorities = positive_majorities(scores);
    let blocks = tie_blocks(&majorities);

    let mut run = Run::new(k);
    for &p in &majorities {
        if run.step(p) {
            break;
        }
    }

    // A tied block matters if the deterministic run reached into it.
    let mut start = 0;
    let mut tie_flag = false;
    for block in &blocks {
        if start >= run.consumed {
            break;
        }
        if block.len() > 1 {
            tie_flag = true;
        }
        start += block.len();
    }
    // With no winner every remaining block was consumed, so ties anywhere count.
    if run.winner.is_none() && blocks.iter().any(|b| b.len() > 1) {
        tie_flag = true;
    }

    // Nothing can beat a Condorcet winner, whatever the order of ties.
    let unbeaten = run
        .winner
        .filter(|&w| (0..k).all(|c| c == w.0 || scores.get(w, CandidateId(c)) > 0));

    let winner = match (run.winner, tie_flag, tie_policy) {
        (Some(w), _, _) if unbeaten.is_some() => Winner::Elected(w),
        (None, _, _) => Winner::FullHandCount(
            "ranked pairs did not establish a winner from the positive majorities".into(),
        ),
        (Some(w), true, TiePolicy::FlagOnly) => match winners_over_tie_orders(k, &blocks) {
            Some(ws) if ws.len() == 1 && ws.contains(&Some(w)) => Winner::Elected(w),
            Some(_) => Winner::FullHandCount(
                "the order of tied majorities changes the ranked pairs winner".into(),
            ),
            None => Winner::FullHandCount(format!(
                "more than {MAX_TIE_ORDERINGS} orderings of tied majorities"
            )),
        },
        (Some(w), _, _) => Winner::Elected(w),
    };

    let inferred = transitive_inferences(&run.dag, run.winner);
    RankedPairsResult {
        winner,
        committed: run.committed,
        inferred,
        skipped: run.skipped,
        dag: run.dag,
        tie_flag: tie_flag && tie_policy == TiePolicy::FlagOnly,
    }
}

/// Every `a ≻ b` implied by the graph but not committed directly, with a
/// shortest committed path as basis. Inferences from `first` lead.
fn transitive_inferences(dag: &PreferenceGraph, first: Option<CandidateId>) -> Vec<Inference> {
    let k = dag.num_candidates();
    let sources = first
        .into_iter()
        .chain((0..k).map(CandidateId).filter(|&c| Some(c) != first));
    let mut out = Vec::new();
    for src in sources {
        for dst in dag.reachable(src) {
            if dag.has_edge(src, dst) {
                continue;
            }
            let basis = dag.path(src, dst).expect("reachable node has a path");
            out.push(Inference {
                winner: src,
                loser: dst,
                basis,
            });
        }
    }
    out
}

/// Winners over every interleaving of tied blocks, or `None` when more than
/// [`MAX_TIE_ORDERINGS`] block orderings would be needed. Orderings that
/// leave the same committed graph are merged before the next block.
fn winners_over_tie_orders(
    k: usize,
    blocks: &[&[Preference]],
) -> Option<BTreeSet<Option<CandidateId>>> {
    let mut states = vec![Run::new(k)];
    let mut orderings = 0usize;
    for block in blocks {
        if states.iter().all(|r| r.winner.is_some()) {
            break;
        }
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for run in states {
            if run.winner.is_some() {
                if seen.insert(run.key()) {
                    next.push(run);
                }
                continue;
            }
            let mut order: Vec<usize> = (0..block.len()).collect();
            loop {
                orderings += 1;
                if orderings > MAX_TIE_ORDERINGS {
                    return None;
                }
                let mut branch = run.clone();
                for &i in &order {
                    if branch.step(block[i]) {
                        break;
                    }
                }
                if seen.insert(branch.key()) {
                    next.push(branch);
                }
                if !next_permutation(&mut order) {
                    break;
                }
            }
        }
        states = next;
    }
    Some(states.iter().map(|r| r.winner).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: usize) -> CandidateId {
        CandidateId(i)
    }

    #[test]
    fn single_candidate_wins_immediately() {
        let s = ScoreMatrix::from_pairs(1, &[]).unwrap();
        let r = ranked_pairs_tabulate(&s, TiePolicy::FlagOnly);
        assert_eq!(r.winner, Winner::Elected(c(0)));
        assert!(r.committed.is_empty());
    }

    #[test]
    fn exact_tie_needs_hand_count() {
        let s = ScoreMatrix::from_pairs(2, &[(0, 1, 0)]).unwrap();
        assert!(ranked_pairs_tabulate(&s, TiePolicy::FlagOnly)
            .winner
            .is_full_hand_count());
    }

    #[test]
    fn tie_that_does_not_change_winner_is_tolerated() {
        // (A,B)=5 strongest; (A,C) and (B,C) tie at 3. A wins either way.
        let s = ScoreMatrix::from_pairs(3, &[(0, 1, 5), (0, 2, 3), (1, 2, 3)]).unwrap();
        let r = ranked_pairs_tabulate(&s, TiePolicy::FlagOnly);
        assert!(r.tie_flag);
        assert_eq!(r.winner, Winner::Elected(c(0)));
        // Lexicographic order processes (A,C) before (B,C).
        assert_eq!(r.committed.len(), 2);
        assert!(r.inferred.is_empty());
    }

    #[test]
    fn tie_that_changes_winner_needs_hand_count() {
        // Cycle A>B, B>C, C>A all with equal strength.
        let s = ScoreMatrix::from_pairs(3, &[(0, 1, 4), (1, 2, 4), (0, 2, -4)]).unwrap();
        let flag = ranked_pairs_tabulate(&s, TiePolicy::FlagOnly);
        assert!(flag.winner.is_full_hand_count());
        let lex = ranked_pairs_tabulate(&s, TiePolicy::Lexicographic);
        assert!(!lex.tie_flag);
        // Lexicographic order: (A,B), (B,C) → A reaches all.
        assert_eq!(lex.winner, Winner::Elected(c(0)));
    }

    #[test]
    fn ties_after_the_winner_are_ignored() {
        let s = ScoreMatrix::from_pairs(3, &[(0, 1, 9), (0, 2, 8), (1, 2, 0)]).unwrap();
        let r = ranked_pairs_tabulate(&s, TiePolicy::FlagOnly);
        assert!(!r.tie_flag);
        assert_eq!(r.winner, Winner::Elected(c(0)));
    }

    #[test]
    fn bfs_basis_is_shortest() {
        let mut g = PreferenceGraph::new(4);
        let p = |a, b| Preference {
            winner: c(a),
            loser: c(b),
            score: 1,
        };
        g.add(p(0, 1));
        g.add(p(1, 2));
        g.add(p(2, 3));
        g.add(p(0, 3));
        assert_eq!(g.path(c(0), c(3)).unwrap(), vec![p(0, 3)]);
        assert_eq!(g.path(c(1), c(3)).unwrap(), vec![p(1, 2), p(2, 3)]);
        assert!(g.path(c(3), c(0)).is_none());
        assert!(g.is_acyclic());
    }
}
