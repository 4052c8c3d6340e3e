//! Preflib ordinal files, strict-order dialects (`soc`/`soi`).
//!
//! ```text
//! # DATA TYPE: soi
//! # NUMBER ALTERNATIVES: 3
//! # ALTERNATIVE NAME 1: Alice
//! 5000: 1,2
//! 2500: 2,3
//! ```
//!
//! Candidate numbers are 1-based. Ranks with ties (`{1,2},3`) are rejected.

use std::collections::BTreeMap;

use super::{ParseReport, ParseWarning, SourceFormat};
use crate::error::{Error, Result};
use crate::model::{Ballot, CandidateId, Election};

pub fn parse_preflib(text: &str) -> Result<ParseReport> {
    let mut warnings = Vec::new();
    let mut declared_k: Option<usize> = None;
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    let mut votes: Vec<(usize, Vec<usize>, u64)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            parse_metadata(meta.trim(), line_no, &mut declared_k, &mut names)?;
            continue;
        }
        let (count, ranking) = parse_vote_line(line, line_no, &mut warnings)?;
        votes.push((line_no, ranking, count));
    }

    let k = match declared_k {
        Some(k) => k,
        None => {
            let inferred = votes
                .iter()
                .flat_map(|(_, r, _)| r.iter().copied())
                .chain(names.keys().copied())
                .max()
                .unwrap_or(0);
            warnings.push(ParseWarning {
                line: 0,
                message: format!(
                    "missing `# NUMBER ALTERNATIVES` header; inferred {inferred} candidates"
                ),
            });
            inferred
        }
    };

    if let Some((&i, _)) = names.range(k + 1..).next() {
        return Err(Error::parse(
            0,
            format!("alternative name for {i} exceeds {k} alternatives"),
        ));
    }
    let roster: Vec<String> = (1..=k)
        .map(|i| names.get(&i).cloned().unwrap_or_else(|| format!("C{i}")))
        .collect();

    let mut ballots = Vec::with_capacity(votes.len());
    for (line_no, ranking, count) in votes {
        let mut ids = Vec::with_capacity(ranking.len());
        for c in ranking {
            if c == 0 || c > k {
                return Err(Error::parse(
                    line_no,
                    format!("unknown candidate {c} (expected 1..={k})"),
                ));
            }
            ids.push(CandidateId(c - 1));
        }
        let ballot = Ballot::new(ids)
            .map_err(|_| Error::parse(line_no, "candidate listed more than once in a ranking"))?;
        ballots.push((ballot, count));
    }

    let election = Election::new(roster, ballots).map_err(|e| Error::parse(0, e.to_string()))?;
    Ok(ParseReport {
        election,
        warnings,
        format: SourceFormat::Preflib,
    })
}

fn parse_metadata(
    meta: &str,
    line_no: usize,
    declared_k: &mut Option<usize>,
    names: &mut BTreeMap<usize, String>,
) -> Result<()> {
    let Some((key, value)) = meta.split_once(':') else {
        return Ok(());
    };
    let key = key.trim().to_ascii_uppercase();
    let value = value.trim();
    if key == "NUMBER ALTERNATIVES" {
        let k = value
            .parse::<usize>()
            .map_err(|_| Error::parse(line_no, format!("bad alternative count {value:?}")))?;
        *declared_k = Some(k);
    } else if let Some(num) = key.strip_prefix("ALTERNATIVE NAME") {
        let i = num
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::parse(line_no, format!("bad alternative number in {meta:?}")))?;
        if i == 0 {
            return Err(Error::parse(line_no, "alternatives are numbered from 1"));
        }
        if names.values().any(|n| n == value) {
            return Err(Error::parse(
                line_no,
                format!("duplicate alternative name {value:?}"),
            ));
        }
        names.insert(i, value.to_string());
    } else if key == "DATA TYPE" {
        match value.to_ascii_lowercase().as_str() {
            "soc" | "soi" => {}
            "toc" | "toi" => {
                return Err(Error::parse(
                    line_no,
                    format!("data type {value} allows tied ranks; only soc/soi are supported"),
                ))
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unsupported data type {other:?}; expected soc or soi"),
                ))
            }
        }
    }
    Ok(())
}

fn parse_vote_line(
    line: &str,
    line_no: usize,
    warnings: &mut Vec<ParseWarning>,
) -> Result<(u64, Vec<usize>)> {
    let (count, ranking) = line
        .split_once(':')
        .ok_or_else(|| Error::parse(line_no, "expected `count: c1,c2,...`"))?;
    let count = count
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::parse(line_no, format!("bad count {:?}", count.trim())))?;
    if ranking.contains('{') || ranking.contains('}') {
        return Err(Error::parse(
            line_no,
            "tied ranks ({...}) are not supported; ballots must be strict orders",
        ));
    }
    let ranking = ranking.trim();
    let mut out = Vec::new();
    if !ranking.is_empty() {
        let mut parts: Vec<&str> = ranking.split(',').map(str::trim).collect();
        if parts.last() == Some(&"") {
            parts.pop();
            warnings.push(ParseWarning {
                line: line_no,
                message: "ignored trailing comma".to_string(),
            });
        }
        for part in parts {
            let c = part
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("bad candidate number {part:?}")))?;
            out.push(c);
        }
    }
    if count == 0 {
        warnings.push(ParseWarning {
            line: line_no,
            message: "vote line with count 0 contributes no ballots".to_string(),
        });
    }
    Ok((count, out))
}
