use crate::assertions::Assertion;
use crate::error::{Error, Result};
use crate::model::{Ballot, Election};

/// Overstatement assorter for a ballot-comparison audit.
///
/// With polling assorter `a` (upper bound 1), overstatement
/// `ω = a(reported) − a(audited)` and reported margin `v = 2·mean − 1`, the
/// value is `(1 − ω) / (2 − v)`. It lies in `[0, 2/(2 − v)]` and its
/// population mean exceeds 1/2 iff the assertion holds on the audited
/// ballots.
pub fn comparison_assorter_value(
    assertion: &Assertion,
    reported: &Ballot,
    audited: &Ballot,
    reported_mean: f64,
) -> Result<f64> {
    if !(reported_mean > 0.5 && reported_mean <= 1.0) {
        return Err(Error::invalid(format!(
            "comparison audits need a reported assorter mean in (1/2, 1], got {reported_mean}"
        )));
    }
    let a_rep = assertion.assorter_value(reported)?;
    let a_aud = assertion.assorter_value(audited)?;
    Ok(comparison_value_from_assorters(
        a_rep,
        a_aud,
        2.0 * reported_mean - 1.0,
    ))
}

/// Mean assorter value over the reported ballots of `election`.
pub fn reported_mean(assertion: &Assertion, election: &Election) -> Result<f64> {
    let total = election.total_ballots();
    if total == 0 {
        return Ok(0.5);
    }
    let mut sum = 0.0;
    for (ballot, count) in election.signatures() {
        sum += count as f64 * assertion.assorter_value(ballot)?;
    }
    Ok(sum / total as f64)
}

#[inline]
pub(crate) fn comparison_value_from_assorters(reported: f64, audited: f64, margin: f64) -> f64 {
    (1.0 - (reported - audited)) / (2.0 - margin)
}
