use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DEFAULT_RISK_LIMIT: f64 = 0.05;
pub const DEFAULT_ERROR_RATE: f64 = 0.002;
pub const DEFAULT_TRIALS: usize = 2000;
pub const DEFAULT_PADDING: f64 = 0.1;
pub const DEFAULT_SEED: u64 = 20_230_314;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AuditStyle {
    /// Sample paper ballots alone.
    #[default]
    Polling,
    /// Sample ballots paired with their cast vote records.
    Comparison,
}

impl AuditStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditStyle::Polling => "polling",
            AuditStyle::Comparison => "comparison",
        }
    }
}

impl fmt::Display for AuditStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AuditStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polling" => Ok(AuditStyle::Polling),
            "comparison" => Ok(AuditStyle::Comparison),
            other => Err(Error::invalid(format!("unknown audit style {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditConfig {
    pub risk_limit: f64,
    /// Per-ballot probability that the audited reading differs from the
    /// reported one.
    pub error_rate: f64,
    pub trials: usize,
    pub seed: u64,
    pub style: AuditStyle,
    /// Additive padding `g` for the Kaplan-Kolmogorov test.
    pub padding: f64,
    /// Simulated audits give up (and count everything) past this fraction.
    pub max_sample_fraction: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            risk_limit: DEFAULT_RISK_LIMIT,
            error_rate: DEFAULT_ERROR_RATE,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            style: AuditStyle::Polling,
            padding: DEFAULT_PADDING,
            max_sample_fraction: 1.0,
        }
    }
}

impl AuditConfig {
    pub fn validate(&self) -> Result<()> {
        let open_unit = |v: f64| v > 0.0 && v < 1.0;
        if !open_unit(self.risk_limit) {
            return Err(Error::invalid(format!(
                "risk limit must lie in (0, 1), got {}",
                self.risk_limit
            )));
        }
        if !(0.0..1.0).contains(&self.error_rate) {
            return Err(Error::invalid(format!(
                "error rate must lie in [0, 1), got {}",
                self.error_rate
            )));
        }
        if self.trials == 0 {
            return Err(Error::invalid("at least one trial is needed"));
        }
        if !(self.padding > 0.0 && self.padding <= 1.0) {
            return Err(Error::invalid(format!(
                "padding must lie in (0, 1], got {}",
                self.padding
            )));
        }
        if !(self.max_sample_fraction > 0.0 && self.max_sample_fraction <= 1.0) {
            return Err(Error::invalid(format!(
                "max sample fraction must lie in (0, 1], got {}",
                self.max_sample_fraction
            )));
        }
        Ok(())
    }
}
