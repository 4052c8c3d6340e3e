//! `tabulate` output for each method.

use std::fmt::Write;

use rla_core::tabulation::{
    condorcet_winner, irv_tabulate, kemeny_tabulate, minimax_tabulate, ranked_pairs_tabulate,
    smith_set, Preference, TiePolicy, Winner,
};
use rla_core::{AssertionSet, Ballot, CandidateId, Election, Method, Result};
use serde_json::{json, Value};

pub struct Tabulation {
    text: String,
    json: Value,
}

impl Tabulation {
    pub fn text(&self) -> String {
        self.text.clone()
    }

    pub fn json(&self) -> String {
        format!(
            "{}\n",
            serde_json::to_string_pretty(&self.json).expect("plain JSON value")
        )
    }
}

struct Out<'a> {
    e: &'a Election,
    text: String,
    json: serde_json::Map<String, Value>,
}

impl<'a> Out<'a> {
    fn name(&self, c: CandidateId) -> String {
        self.e.name(c).to_string()
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json.insert(key.to_string(), v);
    }

    fn winner(&mut self, w: &Winner) {
        match w {
            Winner::Elected(c) => {
                let n = self.name(*c);
                self.line(format!("Winner: {n}"));
                self.set("winner", json!(n));
                self.set("full_hand_count", Value::Null);
            }
            Winner::FullHandCount(reason) => {
                self.line(format!("Winner: none, full hand count required ({reason})"));
                self.set("winner", Value::Null);
                self.set("full_hand_count", json!(reason));
            }
        }
    }

    fn pref(&self, p: &Preference) -> String {
        format!("{} ≻ {}", self.name(p.winner), self.name(p.loser))
    }

    fn pref_json(&self, p: &Preference) -> Value {
        json!({ "winner": self.name(p.winner), "loser": self.name(p.loser), "score": p.score })
    }
}

/// Election with only `keep` standing; other candidates are struck from
/// every ballot. Returns the new election and the id map back.
fn restrict(e: &Election, keep: &[CandidateId]) -> Election {
    let names = keep.iter().map(|&c| e.name(c).to_string()).collect();
    let ballots = e.signatures().map(|(b, n)| {
        let ranking = b
            .ranking()
            .iter()
            .filter_map(|c| keep.iter().position(|k| k == c).map(CandidateId))
            .collect();
        (
            Ballot::new(ranking).expect("subsequence of a valid ballot"),
            n,
        )
    });
    Election::new(names, ballots).expect("restriction of a valid election")
}

pub fn tabulate(
    e: &Election,
    method: Method,
    imported: Option<&AssertionSet>,
    kemeny_limit: usize,
) -> Result<Tabulation> {
    let mut out = Out {
        e,
        text: String::new(),
        json: serde_json::Map::new(),
    };
    out.set("method", json!(method.as_str()));
    out.line(format!("Method: {method}"));
    let scores = e.scores();
    match method {
        Method::Irv => {
            let r = irv_tabulate(e, TiePolicy::FlagOnly)?;
            irv_rounds(&mut out, e, &r);
            if let Some(set) = imported {
                if set.winner.is_some_and(|w| w != r.winner) {
                    out.line("Note: the imported assertion set names a different winner");
                }
            }
        }
        Method::Condorcet => match condorcet_winner(&scores) {
            Some(w) => out.winner(&Winner::Elected(w)),
            None => {
                out.winner(&Winner::FullHandCount(
                    "there is no Condorcet winner".into(),
                ));
            }
        },
        Method::RankedPairs => {
            let r = ranked_pairs_tabulate(&scores, TiePolicy::FlagOnly);
            out.winner(&r.winner);
            out.line("Committed (M):");
            for p in &r.committed {
                let line = format!("  {} ({})", out.pref(p), p.score);
                out.line(line);
            }
            out.line("Inferred (T):");
            for t in &r.inferred {
                let basis: Vec<String> = t.basis.iter().map(|p| out.pref(p)).collect();
                let line = format!(
                    "  {} ≻ {} via {}",
                    out.name(t.winner),
                    out.name(t.loser),
                    basis.join(", ")
                );
                out.line(line);
            }
            if !r.skipped.is_empty() {
                out.line("Skipped:");
                for p in &r.skipped {
                    let line = format!("  {} ({})", out.pref(p), p.score);
                    out.line(line);
                }
            }
            if r.tie_flag {
                out.line("Tied majorities were met before the winner was established");
            }
            let committed: Vec<Value> = r.committed.iter().map(|p| out.pref_json(p)).collect();
            let inferred: Vec<Value> = r
                .inferred
                .iter()
                .map(|t| {
                    json!({
                        "winner": out.name(t.winner),
                        "loser": out.name(t.loser),
                        "basis": t.basis.iter().map(|p| out.pref_json(p)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let skipped: Vec<Value> = r.skipped.iter().map(|p| out.pref_json(p)).collect();
            out.set("committed", json!(committed));
            out.set("inferred", json!(inferred));
            out.set("skipped", json!(skipped));
            out.set("tie_flag", json!(r.tie_flag));
        }
        Method::Minimax => {
            let r = minimax_tabulate(&scores);
            out.winner(&r.winner);
            let mut rows = Vec::new();
            for c in e.candidate_ids() {
                let defeater = r.strongest_defeater[c.0].map(|d| out.name(d));
                let line = format!(
                    "  {:<12} LL {:>8}  strongest defeat by {}",
                    out.name(c),
                    r.largest_loss[c.0],
                    defeater.as_deref().unwrap_or("-")
                );
                out.line(line);
                rows.push(json!({
                    "candidate": out.name(c),
                    "largest_loss": r.largest_loss[c.0],
                    "strongest_defeater": defeater,
                }));
            }
            out.set("candidates", json!(rows));
            out.set("condorcet_case", json!(r.condorcet_case));
        }
        Method::SmithMinimax | Method::SmithIrv => {
            let s = smith_set(&e.pairwise_tallies());
            let members: Vec<String> = s.members.iter().map(|&c| out.name(c)).collect();
            out.line(format!("Smith set: {}", members.join(", ")));
            for d in &s.inner_defeats {
                let line = format!(
                    "  {} defeated by {} ({})",
                    out.name(d.candidate),
                    out.name(d.defeater),
                    d.margin
                );
                out.line(line);
            }
            let defeats: Vec<Value> = s
                .inner_defeats
                .iter()
                .map(|d| json!({ "candidate": out.name(d.candidate), "defeater": out.name(d.defeater), "margin": d.margin }))
                .collect();
            out.set("smith_set", json!(members));
            out.set("inner_defeats", json!(defeats));
            out.set("tie_flag", json!(s.tie_flag));
            let inner = if method == Method::SmithMinimax {
                minimax_tabulate(&scores.restrict(&s.members)).winner
            } else {
                let sub = restrict(e, &s.members);
                Winner::Elected(irv_tabulate(&sub, TiePolicy::FlagOnly)?.winner)
            };
            let inner = match inner {
                Winner::Elected(w) => Winner::Elected(s.members[w.0]),
                other => other,
            };
            if s.tie_flag {
                out.winner(&Winner::FullHandCount(
                    "two members of the Smith set tie".into(),
                ));
            } else {
                out.winner(&inner);
            }
        }
        Method::Kemeny => {
            let r = kemeny_tabulate(&e.pairwise_tallies(), kemeny_limit)?;
            if r.winner_ambiguous {
                out.winner(&Winner::FullHandCount(
                    "tied best rankings are led by different candidates".into(),
                ));
            } else {
                out.winner(&Winner::Elected(r.winner));
            }
            let ranking: Vec<String> = r.best_ranking.iter().map(|&c| out.name(c)).collect();
            out.line(format!(
                "Best ranking: {} (score {})",
                ranking.join(" > "),
                r.best_score
            ));
            out.set("best_ranking", json!(ranking));
            out.set("best_score", json!(r.best_score));
            out.set("tie_flag", json!(r.tie_flag));
        }
    }
    Ok(Tabulation {
        text: out.text,
        json: Value::Object(out.json),
    })
}

fn irv_rounds(out: &mut Out<'_>, e: &Election, r: &rla_core::tabulation::IrvResult) {
    out.winner(&Winner::Elected(r.winner));
    let mut rounds = Vec::new();
    for (i, round) in r.rounds.iter().enumerate() {
        let mut line = format!("  Round {}:", i + 1);
        for &(c, t) in &round.tallies {
            let _ = write!(line, " {} {t}", e.name(c));
        }
        let _ = write!(line, "; exhausted {}", round.exhausted);
        if let Some(x) = round.eliminated {
            let _ = write!(line, "; eliminated {}", e.name(x));
        }
        out.line(line);
        rounds.push(json!({
            "tallies": round.tallies.iter().map(|&(c, t)| json!({ "candidate": e.name(c), "votes": t })).collect::<Vec<_>>(),
            "exhausted": round.exhausted,
            "eliminated": round.eliminated.map(|c| e.name(c)),
        }));
    }
    let order: Vec<&str> = r.elimination_order.iter().map(|&c| e.name(c)).collect();
    out.set("elimination_order", json!(order));
    out.set("rounds", json!(rounds));
    out.set("tie_flag", json!(r.tie_flag));
    if r.tie_flag {
        out.line("An elimination tie was broken by candidate order");
    }
}
