//! Audit sample files: JSON lines in draw order.
//!
//! Polling: `{"audited": ["A", "B"]}`.
//! Comparison: `{"reported": ["A", "B"], "audited": ["A"]}`.

use serde::Deserialize;

use super::resolve_ranking;
use crate::error::{Error, Result};
use crate::model::{Ballot, Election};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub reported: Option<Ballot>,
    pub audited: Ballot,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSample {
    #[serde(default)]
    reported: Option<Vec<String>>,
    audited: Vec<String>,
}

pub fn parse_samples(text: &str, election: &Election) -> Result<Vec<SampleRecord>> {
    let roster = election.candidates();
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let raw: RawSample =
            serde_json::from_str(line).map_err(|e| Error::parse(line_no, e.to_string()))?;
        let audited = resolve_ranking(roster, &raw.audited)
            .map_err(|msg| Error::Data(format!("sample line {line_no}: {msg}")))?;
        let reported = raw
            .reported
            .map(|r| resolve_ranking(roster, &r))
            .transpose()
            .map_err(|msg| Error::Data(format!("sample line {line_no}: {msg}")))?;
        out.push(SampleRecord { reported, audited });
    }
    Ok(out)
}
