//! Runs the risk test over an actual audit sample.

use super::comparison::{comparison_value_from_assorters, reported_mean};
use super::config::{AuditConfig, AuditStyle};
use super::risk::RiskState;
use crate::assertions::{Assertion, AssertionSet};
use crate::error::{Error, Result};
use crate::io::SampleRecord;
use crate::model::Election;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditOutcome {
    /// Every assertion reached the risk limit.
    Certified,
    /// At least one assertion did not; a full hand count is required.
    EscalateFullCount,
}

impl AuditOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditOutcome::Certified => "certified",
            AuditOutcome::EscalateFullCount => "escalate_full_count",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssertionAudit {
    /// p-value after each sampled ballot.
    pub p_values: Vec<f64>,
    pub final_p_value: f64,
    pub certified: bool,
    /// Ballots needed before the p-value first reached the risk limit.
    pub samples_to_certify: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub outcome: AuditOutcome,
    pub ballots_examined: u64,
    pub per_assertion: Vec<AssertionAudit>,
    /// Largest `samples_to_certify` when certified.
    pub samples_to_certify: Option<u64>,
}

/// Feeds the samples (in draw order) through the risk test of every
/// assertion. An assertion is certified once its p-value reaches the risk
/// limit; later samples do not undo that.
pub fn run_audit(
    set: &AssertionSet,
    election: &Election,
    samples: &[SampleRecord],
    cfg: &AuditConfig,
) -> Result<AuditReport> {
    cfg.validate()?;
    let n = election.total_ballots();
    if samples.len() as u64 > n {
        return Err(Error::InvalidState(format!(
            "{} samples exceed the {n} ballots cast",
            samples.len()
        )));
    }
    if cfg.style == AuditStyle::Comparison {
        if let Some(line) = samples.iter().position(|s| s.reported.is_none()) {
            return Err(Error::Data(format!(
                "comparison audit needs a reported ballot on sample {}",
                line + 1
            )));
        }
    }

    let per_assertion = set
        .assertions
        .iter()
        .map(|a| audit_one(a, election, samples, cfg))
        .collect::<Result<Vec<_>>>()?;

    let all_certified = !per_assertion.is_empty() && per_assertion.iter().all(|a| a.certified);
    let certified = all_certified || (set.assertions.is_empty() && !set.requires_full_hand_count());
    Ok(AuditReport {
        outcome: if certified {
            AuditOutcome::Certified
        } else {
            AuditOutcome::EscalateFullCount
        },
        ballots_examined: samples.len() as u64,
        samples_to_certify: if certified {
            Some(
                per_assertion
                    .iter()
                    .filter_map(|a| a.samples_to_certify)
                    .max()
                    .unwrap_or(0),
            )
        } else {
            None
        },
        per_assertion,
    })
}

fn audit_one(
    assertion: &Assertion,
    election: &Election,
    samples: &[SampleRecord],
    cfg: &AuditConfig,
) -> Result<AssertionAudit> {
    let uncertified = |p_values: Vec<f64>| AssertionAudit {
        p_values,
        final_p_value: 1.0,
        certified: false,
        samples_to_certify: None,
    };
    if assertion.is_full_hand_count() {
        return Ok(uncertified(Vec::new()));
    }
    let margin = match cfg.style {
        AuditStyle::Polling => None,
        AuditStyle::Comparison => {
            let mean = reported_mean(assertion, election)?;
            if mean <= 0.5 {
                return Ok(uncertified(Vec::new()));
            }
            Some(2.0 * mean - 1.0)
        }
    };

    let mut risk = RiskState::new(election.total_ballots(), cfg.padding)?;
    let mut p_values = Vec::with_capacity(samples.len());
    let mut first_certified = None;
    for (i, s) in samples.iter().enumerate() {
        let audited = assertion.assorter_value(&s.audited)?;
        let x = match (margin, &s.reported) {
            (None, _) => audited,
            (Some(v), Some(rep)) => {
                comparison_value_from_assorters(assertion.assorter_value(rep)?, audited, v)
            }
            (Some(_), None) => unreachable!("checked by run_audit"),
        };
        let p = risk.update(x)?;
        p_values.push(p);
        if first_certified.is_none() && p <= cfg.risk_limit {
            first_certified = Some(i as u64 + 1);
        }
    }
    let final_p_value = p_values.last().copied().unwrap_or(1.0);
    Ok(AssertionAudit {
        p_values,
        final_p_value,
        certified: first_certified.is_some(),
        samples_to_certify: first_certified,
    })
}
