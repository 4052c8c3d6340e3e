use crate::error::{Error, Result};

/// Null-hypothesis mean for every assorter.
pub const NULL_MEAN: f64 = 0.5;

/// Kaplan-Kolmogorov sequential test state for sampling without replacement.
///
/// Each observation `x` is padded to `y = x + g` and compared against the
/// conditional null mean `m = (N(t + g) − S) / (N − n)` of the ballots not yet
/// drawn. The martingale is `Π y/m`; the p-value is the reciprocal of its
/// running maximum, capped at 1. Once `m ≤ 0` the null is impossible and the
/// p-value is 0 from then on.
#[derive(Clone, Debug, PartialEq)]
pub struct RiskState {
    population: u64,
    padding: f64,
    sum: f64,
    martingale: f64,
    max_martingale: f64,
    samples: u64,
    null_impossible: bool,
}

impl RiskState {
    pub fn new(population: u64, padding: f64) -> Result<Self> {
        if !(padding >= 0.0 && padding.is_finite()) {
            return Err(Error::invalid(format!(
                "padding must be finite and ≥ 0, got {padding}"
            )));
        }
        Ok(RiskState {
            population,
            padding,
            sum: 0.0,
            martingale: 1.0,
            max_martingale: 1.0,
            samples: 0,
            null_impossible: false,
        })
    }

    pub fn population(&self) -> u64 {
        self.population
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn martingale(&self) -> f64 {
        self.martingale
    }

    pub fn p_value(&self) -> f64 {
        if self.null_impossible {
            0.0
        } else {
            (1.0 / self.max_martingale).min(1.0)
        }
    }

    /// Folds in one sampled assorter value and returns the new p-value.
    pub fn update(&mut self, x: f64) -> Result<f64> {
        if self.samples >= self.population {
            return Err(Error::InvalidState(format!(
                "all {} ballots have already been sampled",
                self.population
            )));
        }
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::invalid(format!(
                "assorter value must be finite and ≥ 0, got {x}"
            )));
        }
        let n = self.population as f64;
        let y = x + self.padding;
        let remaining = n - self.samples as f64;
        let m = (n * (NULL_MEAN + self.padding) - self.sum) / remaining;
        if m <= 0.0 {
            self.null_impossible = true;
        } else if !self.null_impossible {
            self.martingale *= y / m;
            self.max_martingale = self.max_martingale.max(self.martingale);
        }
        self.sum += y;
        self.samples += 1;
        Ok(self.p_value())
    }
}

/// Functional form of [`RiskState::update`].
pub fn kk_update(mut state: RiskState, x: f64) -> Result<RiskState> {
    state.update(x)?;
    Ok(state)
}
