//! Reading and writing elections, and scaling them up.

mod native;
mod preflib;
mod samples;

use std::path::Path;

pub use native::{parse_native, to_native_json};
pub use preflib::parse_preflib;
pub use samples::{parse_samples, SampleRecord};

use crate::error::{Error, Result};
use crate::model::{Ballot, CandidateId, Election};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceFormat {
    Preflib,
    Native,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    /// 1-based line, or 0 for whole-file observations.
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct ParseReport {
    pub election: Election,
    pub warnings: Vec<ParseWarning>,
    pub format: SourceFormat,
}

impl SourceFormat {
    /// Guesses the format from a file extension; anything that is not `.json`
    /// is treated as Preflib.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => SourceFormat::Native,
            _ => SourceFormat::Preflib,
        }
    }
}

pub fn parse(text: &str, format: SourceFormat) -> Result<ParseReport> {
    match format {
        SourceFormat::Preflib => parse_preflib(text),
        SourceFormat::Native => parse_native(text),
    }
}

/// Multiplies every signature count by `factor`.
pub fn scale(election: &Election, factor: u64) -> Result<Election> {
    if factor == 0 {
        return Err(Error::invalid("scale factor must be at least 1"));
    }
    let rows = election
        .signatures()
        .map(|(b, n)| {
            n.checked_mul(factor)
                .map(|scaled| (b.clone(), scaled))
                .ok_or_else(|| Error::invalid("scaled ballot count overflows u64"))
        })
        .collect::<Result<Vec<_>>>()?;
    Election::new(election.candidates().to_vec(), rows)
}

pub(crate) fn resolve_ranking(
    roster: &[String],
    names: &[String],
) -> std::result::Result<Ballot, String> {
    let ids = names
        .iter()
        .map(|name| {
            roster
                .iter()
                .position(|c| c == name)
                .map(CandidateId)
                .ok_or_else(|| format!("unknown candidate {name:?}"))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ballot::new(ids).map_err(|_| "candidate listed more than once in a ranking".to_string())
}
