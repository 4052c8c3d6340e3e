//! Native election JSON:
//!
//! ```json
//! { "candidates": ["A", "B"], "ballots": [ { "ranking": ["A", "B"], "count": 3 } ] }
//! ```

use serde::{Deserialize, Serialize};

use super::{resolve_ranking, ParseReport, SourceFormat};
use crate::error::{Error, Result};
use crate::model::Election;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NativeElection {
    candidates: Vec<String>,
    #[serde(default)]
    ballots: Vec<NativeBallot>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NativeBallot {
    ranking: Vec<String>,
    count: i64,
}

pub fn parse_native(text: &str) -> Result<ParseReport> {
    let doc: NativeElection =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    for (pos, name) in doc.candidates.iter().enumerate() {
        if doc.candidates[..pos].contains(name) {
            return Err(Error::parse(
                0,
                format!("duplicate candidate name {name:?}"),
            ));
        }
    }
    let mut rows = Vec::with_capacity(doc.ballots.len());
    for (n, ballot) in doc.ballots.iter().enumerate() {
        let count = u64::try_from(ballot.count).map_err(|_| {
            Error::parse(
                0,
                format!("ballot entry {n} has negative count {}", ballot.count),
            )
        })?;
        let resolved = resolve_ranking(&doc.candidates, &ballot.ranking)
            .map_err(|msg| Error::parse(0, format!("ballot entry {n}: {msg}")))?;
        rows.push((resolved, count));
    }
    let election =
        Election::new(doc.candidates, rows).map_err(|e| Error::parse(0, e.to_string()))?;
    Ok(ParseReport {
        election,
        warnings: Vec::new(),
        format: SourceFormat::Native,
    })
}

/// Serializes an election to native JSON, one entry per signature.
pub fn to_native_json(election: &Election) -> String {
    let doc = NativeElection {
        candidates: election.candidates().to_vec(),
        ballots: election
            .signatures()
            .map(|(b, count)| NativeBallot {
                ranking: b
                    .ranking()
                    .iter()
                    .map(|&c| election.name(c).to_string())
                    .collect(),
                count: count as i64,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("election serialization cannot fail")
}
