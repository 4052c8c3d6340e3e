//! Text tables and JSON documents for `parse`, `assertions`, `estimate`
//! and `audit`.

use std::fmt::Write;

use rla_core::audit::{AsnEstimate, AuditConfig, AuditReport};
use rla_core::io::to_native_json;
use rla_core::{AssertionSet, Election};
use serde_json::{json, Value};

const INFINITY: &str = "∞";

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain JSON value")
}

pub fn election_summary(e: &Election, as_json: bool) -> String {
    if as_json {
        return format!("{}\n", to_native_json(e));
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Candidates: {} ({})",
        e.num_candidates(),
        e.candidates().join(", ")
    );
    let _ = writeln!(s, "Ballots: {}", e.total_ballots());
    let _ = writeln!(s, "Distinct rankings: {}", e.num_signatures());
    let _ = writeln!(s, "Digest: {}", e.digest());
    s
}

fn winner_name(set: &AssertionSet, e: &Election) -> Option<String> {
    set.winner.map(|w| e.name(w).to_string())
}

pub fn assertion_list(set: &AssertionSet, e: &Election) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Method: {}", set.method);
    let _ = writeln!(
        s,
        "Winner: {}",
        winner_name(set, e).as_deref().unwrap_or("none")
    );
    let _ = writeln!(s, "Assertions: {}", set.len());
    for a in &set.assertions {
        let _ = writeln!(s, "  {}", a.describe(e));
    }
    s
}

fn percent(n: u64, total: u64) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * n as f64 / total as f64
    }
}

fn column_width(set: &AssertionSet, e: &Election) -> usize {
    set.assertions
        .iter()
        .map(|a| a.describe(e).chars().count())
        .chain(["Assertion".len(), "Overall".len()])
        .max()
        .unwrap_or(0)
}

fn asn_cells(asn: u64, full: bool, population: u64) -> (String, String) {
    if full {
        (INFINITY.into(), INFINITY.into())
    } else {
        (asn.to_string(), format!("{:.2}", percent(asn, population)))
    }
}

pub fn estimate_text(set: &AssertionSet, e: &Election, est: &AsnEstimate) -> String {
    let w = column_width(set, e);
    let mut s = String::new();
    let _ = writeln!(s, "Method: {}", set.method);
    let _ = writeln!(
        s,
        "Winner: {}",
        winner_name(set, e).as_deref().unwrap_or("none")
    );
    let _ = writeln!(s, "Ballots: {}", est.population);
    let _ = writeln!(s, "{:<w$}  {:>10}  {:>8}", "Assertion", "ASN", "ASN (%)");
    for (a, asn) in set.assertions.iter().zip(&est.per_assertion) {
        let (n, p) = asn_cells(asn.median, asn.full_count, est.population);
        let _ = writeln!(s, "{:<w$}  {n:>10}  {p:>8}", a.describe(e));
    }
    let (n, p) = asn_cells(est.overall, est.full_count, est.population);
    let _ = writeln!(s, "{:<w$}  {n:>10}  {p:>8}", "Overall");
    s
}

fn config_json(cfg: &AuditConfig) -> Value {
    json!({
        "risk_limit": cfg.risk_limit,
        "error_rate": cfg.error_rate,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "style": cfg.style.as_str(),
        "padding": cfg.padding,
        "max_sample_fraction": cfg.max_sample_fraction,
    })
}

/// Full counts have `asn: null`.
pub fn estimate_json(
    set: &AssertionSet,
    e: &Election,
    est: &AsnEstimate,
    cfg: &AuditConfig,
) -> String {
    let rows: Vec<Value> = set
        .assertions
        .iter()
        .zip(&est.per_assertion)
        .map(|(a, asn)| {
            json!({
                "assertion": a.describe(e),
                "asn": (!asn.full_count).then_some(asn.median),
                "asn_percent": (!asn.full_count).then(|| round2(percent(asn.median, est.population))),
                "lower_quartile": asn.lower_quartile,
                "upper_quartile": asn.upper_quartile,
                "certified_fraction": asn.certified_fraction,
                "full_count": asn.full_count,
            })
        })
        .collect();
    pretty(&json!({
        "method": set.method.as_str(),
        "winner": winner_name(set, e),
        "ballots": est.population,
        "overall_asn": (!est.full_count).then_some(est.overall),
        "overall_asn_percent": (!est.full_count).then(|| round2(percent(est.overall, est.population))),
        "full_count": est.full_count,
        "assertions": rows,
        "config": config_json(cfg),
    }))
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

pub fn audit_text(
    set: &AssertionSet,
    e: &Election,
    rep: &AuditReport,
    cfg: &AuditConfig,
) -> String {
    let w = column_width(set, e);
    let mut s = String::new();
    let _ = writeln!(s, "Method: {}", set.method);
    let _ = writeln!(
        s,
        "Winner: {}",
        winner_name(set, e).as_deref().unwrap_or("none")
    );
    let _ = writeln!(s, "Ballots examined: {}", rep.ballots_examined);
    let _ = writeln!(s, "Risk limit: {}", cfg.risk_limit);
    let _ = writeln!(
        s,
        "{:<w$}  {:>10}  {:>9}  {:>8}",
        "Assertion", "p-value", "certified", "samples"
    );
    for (a, r) in set.assertions.iter().zip(&rep.per_assertion) {
        let samples = r
            .samples_to_certify
            .map_or("-".to_string(), |n| n.to_string());
        let _ = writeln!(
            s,
            "{:<w$}  {:>10.6}  {:>9}  {samples:>8}",
            a.describe(e),
            r.final_p_value,
            if r.certified { "yes" } else { "no" }
        );
    }
    let outcome = match rep.samples_to_certify {
        Some(n) => format!("certified after {n} ballots"),
        None => "escalate to a full hand count".to_string(),
    };
    let _ = writeln!(s, "Outcome: {outcome}");
    s
}

pub fn audit_json(
    set: &AssertionSet,
    e: &Election,
    rep: &AuditReport,
    cfg: &AuditConfig,
) -> String {
    let rows: Vec<Value> = set
        .assertions
        .iter()
        .zip(&rep.per_assertion)
        .map(|(a, r)| {
            json!({
                "assertion": a.describe(e),
                "certified": r.certified,
                "final_p_value": r.final_p_value,
                "samples_to_certify": r.samples_to_certify,
                "p_values": r.p_values,
            })
        })
        .collect();
    pretty(&json!({
        "method": set.method.as_str(),
        "winner": winner_name(set, e),
        "outcome": rep.outcome.as_str(),
        "ballots_examined": rep.ballots_examined,
        "samples_to_certify": rep.samples_to_certify,
        "assertions": rows,
        "config": config_json(cfg),
    }))
}
