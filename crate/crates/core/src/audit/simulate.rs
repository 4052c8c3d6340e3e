//! ASN estimation by simulated audits.
//!
//! Each trial draws ballots without replacement in a random order, perturbs
//! each drawn ballot with probability `error_rate` (replacing its audited
//! reading by a different signature chosen uniformly), and feeds assorter
//! values through the risk test until the p-value reaches the risk limit.
//! The per-assertion ASN is the median sample count over all trials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::comparison::{comparison_value_from_assorters, reported_mean};
use super::config::{AuditConfig, AuditStyle};
use super::risk::RiskState;
use crate::assertions::{Assertion, AssertionSet};
use crate::error::Result;
use crate::model::Election;
use crate::parallel;

/// Simulated sample sizes for one assertion.
#[derive(Clone, Debug, PartialEq)]
pub struct AssertionAsn {
    /// Median over trials, rounded up to whole ballots.
    pub median: u64,
    pub lower_quartile: u64,
    pub upper_quartile: u64,
    /// Share of trials that reached the risk limit before the cap.
    pub certified_fraction: f64,
    /// No sampling audit is possible for this assertion.
    pub full_count: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsnEstimate {
    pub per_assertion: Vec<AssertionAsn>,
    /// Largest per-assertion median.
    pub overall: u64,
    pub full_count: bool,
    pub population: u64,
}

impl AsnEstimate {
    pub fn percent(&self) -> f64 {
        if self.population == 0 {
            0.0
        } else {
            100.0 * self.overall as f64 / self.population as f64
        }
    }
}

/// Result of one simulated audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub samples: u64,
    pub certified: bool,
}

/// Random stream for `(seed, assertion, trial)`. Independent of thread
/// scheduling, so results do not depend on how trials are distributed.
pub fn trial_rng(seed: u64, assertion_index: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((assertion_index << 32) ^ trial);
    rng
}

/// Per-signature assorter values and counts, ready for sampling.
struct Population {
    counts: Vec<u64>,
    assorter: Vec<f64>,
    total: u64,
    /// `Some(v)` for comparison audits: reported margin `2·mean − 1`.
    reported_margin: Option<f64>,
}

impl Population {
    fn new(assertion: &Assertion, election: &Election, style: AuditStyle) -> Result<Option<Self>> {
        let mut counts = Vec::with_capacity(election.num_signatures());
        let mut assorter = Vec::with_capacity(election.num_signatures());
        for (ballot, count) in election.signatures() {
            counts.push(count);
            assorter.push(assertion.assorter_value(ballot)?);
        }
        let total = election.total_ballots();
        let reported_margin = match style {
            AuditStyle::Polling => None,
            AuditStyle::Comparison => {
                let mean = reported_mean(assertion, election)?;
                if mean <= 0.5 {
                    // Reportedly false; a comparison audit cannot confirm it.
                    return Ok(None);
                }
                Some(2.0 * mean - 1.0)
            }
        };
        Ok(Some(Population {
            counts,
            assorter,
            total,
            reported_margin,
        }))
    }

    fn run_trial(&self, cfg: &AuditConfig, rng: &mut ChaCha8Rng) -> TrialOutcome {
        let n = self.total;
        let cap = ((cfg.max_sample_fraction * n as f64).ceil() as u64).clamp(1, n);
        let sigs = self.counts.len();
        let mut urn = Fenwick::new(&self.counts);
        let mut risk = RiskState::new(n, cfg.padding).expect("validated padding");
        for drawn in 1..=cap {
            let r = rng.random_range(0..urn.total());
            let reported = urn.take(r);
            let mut audited = reported;
            if sigs > 1 && cfg.error_rate > 0.0 && rng.random_bool(cfg.error_rate) {
                let other = rng.random_range(0..sigs - 1);
                audited = if other >= reported { other + 1 } else { other };
            }
            let x = match self.reported_margin {
                None => self.assorter[audited],
                Some(v) => comparison_value_from_assorters(
                    self.assorter[reported],
                    self.assorter[audited],
                    v,
                ),
            };
            let p = risk.update(x).expect("draws never exceed the population");
            if p <= cfg.risk_limit {
                return TrialOutcome {
                    samples: drawn,
                    certified: true,
                };
            }
        }
        TrialOutcome {
            samples: n,
            certified: false,
        }
    }
}

/// Runs `cfg.trials` simulated audits of one assertion using random streams
/// keyed by `assertion_index`. `None` when the assertion cannot be audited
/// by sampling in this style.
pub fn simulate_trials(
    assertion: &Assertion,
    election: &Election,
    cfg: &AuditConfig,
    assertion_index: u64,
) -> Result<Option<Vec<TrialOutcome>>> {
    trials_impl(assertion, election, cfg, assertion_index, true)
}

/// Sequential twin of [`simulate_trials`], for determinism checks and
/// benchmarks.
pub fn simulate_trials_sequential(
    assertion: &Assertion,
    election: &Election,
    cfg: &AuditConfig,
    assertion_index: u64,
) -> Result<Option<Vec<TrialOutcome>>> {
    trials_impl(assertion, election, cfg, assertion_index, false)
}

fn trials_impl(
    assertion: &Assertion,
    election: &Election,
    cfg: &AuditConfig,
    assertion_index: u64,
    in_parallel: bool,
) -> Result<Option<Vec<TrialOutcome>>> {
    cfg.validate()?;
    let Some(population) = Population::new(assertion, election, cfg.style)? else {
        return Ok(None);
    };
    if population.total == 0 {
        let nothing = TrialOutcome {
            samples: 0,
            certified: true,
        };
        return Ok(Some(vec![nothing; cfg.trials]));
    }
    let trial = |t: usize| {
        let mut rng = trial_rng(cfg.seed, assertion_index, t as u64);
        population.run_trial(cfg, &mut rng)
    };
    Ok(Some(if in_parallel {
        parallel::map_range(cfg.trials, trial)
    } else {
        parallel::map_range_sequential(cfg.trials, trial)
    }))
}

/// Median simulated sample size for one assertion.
pub fn simulate_asn(
    assertion: &Assertion,
    election: &Election,
    cfg: &AuditConfig,
) -> Result<AssertionAsn> {
    simulate_asn_indexed(assertion, election, cfg, 0)
}

pub(crate) fn simulate_asn_indexed(
    assertion: &Assertion,
    election: &Election,
    cfg: &AuditConfig,
    assertion_index: u64,
) -> Result<AssertionAsn> {
    let n = election.total_ballots();
    if assertion.is_full_hand_count() {
        return Ok(full_count(n));
    }
    match simulate_trials(assertion, election, cfg, assertion_index)? {
        None => Ok(full_count(n)),
        Some(outcomes) => Ok(summarize(&outcomes)),
    }
}

fn full_count(n: u64) -> AssertionAsn {
    AssertionAsn {
        median: n,
        lower_quartile: n,
        upper_quartile: n,
        certified_fraction: 0.0,
        full_count: true,
    }
}

/// Median and quartiles of the trial sample sizes (linear interpolation,
/// rounded up).
pub fn summarize(outcomes: &[TrialOutcome]) -> AssertionAsn {
    let mut sizes: Vec<u64> = outcomes.iter().map(|o| o.samples).collect();
    sizes.sort_unstable();
    let certified = outcomes.iter().filter(|o| o.certified).count();
    AssertionAsn {
        median: quantile(&sizes, 0.5),
        lower_quartile: quantile(&sizes, 0.25),
        upper_quartile: quantile(&sizes, 0.75),
        certified_fraction: certified as f64 / outcomes.len().max(1) as f64,
        full_count: false,
    }
}

fn quantile(sorted: &[u64], q: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    let value = sorted[lo] as f64 + frac * (sorted[hi] as f64 - sorted[lo] as f64);
    value.ceil() as u64
}

/// Largest per-assertion median over the set.
pub fn estimate_audit(
    set: &AssertionSet,
    election: &Election,
    cfg: &AuditConfig,
) -> Result<AsnEstimate> {
    cfg.validate()?;
    let n = election.total_ballots();
    let per_assertion = set
        .assertions
        .iter()
        .enumerate()
        .map(|(i, a)| simulate_asn_indexed(a, election, cfg, i as u64))
        .collect::<Result<Vec<_>>>()?;
    let full = per_assertion.iter().any(|a| a.full_count);
    let overall = if full {
        n
    } else {
        per_assertion.iter().map(|a| a.median).max().unwrap_or(0)
    };
    Ok(AsnEstimate {
        per_assertion,
        overall,
        full_count: full,
        population: n,
    })
}

/// Binary indexed tree over signature counts, for drawing ballots without
/// replacement in `O(log S)` per draw.
struct Fenwick {
    tree: Vec<u64>,
    total: u64,
    top_bit: usize,
}

impl Fenwick {
    fn new(counts: &[u64]) -> Self {
        let n = counts.len();
        let mut tree = vec![0u64; n + 1];
        for (i, &c) in counts.iter().enumerate() {
            let mut j = i + 1;
            while j <= n {
                tree[j] += c;
                j += j & j.wrapping_neg();
            }
        }
        let top_bit = if n == 0 {
            0
        } else {
            1 << (usize::BITS - 1 - n.leading_zeros())
        };
        Fenwick {
            tree,
            total: counts.iter().sum(),
            top_bit,
        }
    }

    fn total(&self) -> u64 {
        self.total
    }

    /// Removes one ballot at cumulative position `r` and returns its
    /// signature index.
    fn take(&mut self, mut r: u64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = self.top_bit;
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= r {
                pos = next;
                r -= self.tree[next];
            }
            step >>= 1;
        }
        let mut j = pos + 1;
        while j <= n {
            self.tree[j] -= 1;
            j += j & j.wrapping_neg();
        }
        self.total -= 1;
        pos
    }
}
