//! Risk-limiting audits: the sequential risk test, sample-size simulation
//! and audits over real samples.

mod comparison;
mod config;
mod risk;
mod run;
mod simulate;

pub use comparison::{comparison_assorter_value, reported_mean};
pub use config::{
    AuditConfig, AuditStyle, DEFAULT_ERROR_RATE, DEFAULT_PADDING, DEFAULT_RISK_LIMIT, DEFAULT_SEED,
    DEFAULT_TRIALS,
};
pub use risk::{kk_update, RiskState, NULL_MEAN};
pub use run::{run_audit, AssertionAudit, AuditOutcome, AuditReport};
pub use simulate::{
    estimate_audit, simulate_asn, simulate_trials, simulate_trials_sequential, summarize,
    trial_rng, AsnEstimate, AssertionAsn, TrialOutcome,
};
