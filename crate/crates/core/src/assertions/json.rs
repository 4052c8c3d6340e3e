//! Assertion-set JSON. Candidates are referenced by name.
//!
//! ```json
//! {
//!   "method": "ranked-pairs",
//!   "winner": "A",
//!   "assertions": [
//!     { "type": "pairwise_positive", "winner": "A", "loser": "B" },
//!     { "type": "score_comparison", "hi": ["A", "B"], "lo": ["D", "A"] },
//!     { "type": "ranking_comparison", "preferred": ["A", "B"], "other": ["B", "A"] },
//!     { "type": "full_hand_count", "reason": "..." }
//!   ],
//!   "metadata": { "election_digest": "…", "parameters": {} }
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Assertion, AssertionSet, Method, SetMetadata};
use crate::error::{Error, Result};
use crate::model::{CandidateId, Election};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDoc {
    method: String,
    winner: Option<String>,
    assertions: Vec<AssertionDoc>,
    #[serde(default)]
    metadata: MetadataDoc,
}

#[derive(Default, Serialize, Deserialize)]
struct MetadataDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    election_digest: Option<String>,
    #[serde(default)]
    parameters: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum AssertionDoc {
    PairwisePositive {
        winner: String,
        loser: String,
    },
    ScoreComparison {
        hi: [String; 2],
        lo: [String; 2],
    },
    RankingComparison {
        preferred: Vec<String>,
        other: Vec<String>,
    },
    FullHandCount {
        reason: String,
    },
}

pub fn export_assertions(set: &AssertionSet, election: &Election) -> String {
    let n = |c: CandidateId| election.name(c).to_string();
    let names = |v: &[CandidateId]| v.iter().map(|&c| n(c)).collect::<Vec<_>>();
    let doc = SetDoc {
        method: set.method.as_str().to_string(),
        winner: set.winner.map(n),
        assertions: set
            .assertions
            .iter()
            .map(|a| match a {
                Assertion::PairwisePositive { winner, loser } => AssertionDoc::PairwisePositive {
                    winner: n(*winner),
                    loser: n(*loser),
                },
                Assertion::ScoreComparison { hi, lo } => AssertionDoc::ScoreComparison {
                    hi: [n(hi.0), n(hi.1)],
                    lo: [n(lo.0), n(lo.1)],
                },
                Assertion::RankingComparison { preferred, other } => {
                    AssertionDoc::RankingComparison {
                        preferred: names(preferred),
                        other: names(other),
                    }
                }
                Assertion::FullHandCount { reason } => AssertionDoc::FullHandCount {
                    reason: reason.clone(),
                },
            })
            .collect(),
        metadata: MetadataDoc {
            election_digest: set.metadata.election_digest.clone(),
            parameters: set.metadata.parameters.clone(),
        },
    };
    serde_json::to_string_pretty(&doc).expect("assertion set serialization cannot fail")
}

pub fn import_assertions(text: &str, election: &Election) -> Result<AssertionSet> {
    let doc: SetDoc =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("line {}: {e}", e.line())))?;
    let method: Method = doc
        .method
        .parse()
        .map_err(|_| Error::Schema(format!("unknown method {:?}", doc.method)))?;
    let id = |name: &str| {
        election
            .candidate_id(name)
            .ok_or_else(|| Error::Schema(format!("unknown candidate {name:?}")))
    };
    let ids = |names: &[String]| names.iter().map(|s| id(s)).collect::<Result<Vec<_>>>();

    let winner = doc.winner.as_deref().map(id).transpose()?;
    let mut assertions = Vec::with_capacity(doc.assertions.len());
    for (n, a) in doc.assertions.iter().enumerate() {
        let assertion = match a {
            AssertionDoc::PairwisePositive { winner, loser } => Assertion::PairwisePositive {
                winner: id(winner)?,
                loser: id(loser)?,
            },
            AssertionDoc::ScoreComparison { hi, lo } => Assertion::ScoreComparison {
                hi: (id(&hi[0])?, id(&hi[1])?),
                lo: (id(&lo[0])?, id(&lo[1])?),
            },
            AssertionDoc::RankingComparison { preferred, other } => Assertion::RankingComparison {
                preferred: ids(preferred)?,
                other: ids(other)?,
            },
            AssertionDoc::FullHandCount { reason } => Assertion::FullHandCount {
                reason: reason.clone(),
            },
        };
        assertion
            .validate(election.num_candidates())
            .map_err(|e| Error::Schema(format!("assertion {n}: {e}")))?;
        assertions.push(assertion);
    }

    let mut set = AssertionSet::new(method, winner, assertions);
    set.metadata = SetMetadata {
        election_digest: doc.metadata.election_digest,
        parameters: doc.metadata.parameters,
    };
    Ok(set)
}
