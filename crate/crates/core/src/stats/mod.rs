//! Verification statistics over enumerated `a`-points.

mod counting;
mod equidist;
mod mean;
mod power;

pub use counting::{counting_report, main_term, CountReport};
pub use equidist::{star_discrepancy, weyl_criterion_report, weyl_sum_unimodular, DiscrepancyReport, WeylSumReport};
pub use mean::{mean_value_sum, MeanValueReport};
pub use power::{duality_gap, power_sum, BoundBudget, PowerSumReport};

use crate::apoints::PointSet;
use crate::{error::domain, Result};

/// Sets that start at their own cutoff are complete from the bottom.
pub(crate) fn require_complete(set: &PointSet, t: f64) -> Result<()> {
    if set.lower != set.t_a {
        return Err(domain(format!(
            "point set starts at {} rather than its cutoff t_a = {}",
            set.lower, set.t_a
        )));
    }
    set.require_covers(set.t_a, t)
}
