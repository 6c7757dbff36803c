use super::require_complete;
use crate::apoints::PointSet;
use crate::Result;
use serde::Serialize;
use std::f64::consts::{E, PI};

/// `(T/2π) log(qT/2πe)`.
pub fn main_term(q: usize, t: f64) -> f64 {
    t / (2.0 * PI) * (q as f64 * t / (2.0 * PI * E)).ln()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub t: f64,
    /// Points with `t_a < γ ≤ T`.
    pub computed: usize,
    pub main_term: f64,
    pub difference: f64,
    /// `difference / log(qT)`.
    pub normalized: f64,
    /// `|difference| ≤ 5 log(qT)`.
    pub within_bound: bool,
}

pub fn counting_report(set: &PointSet, t: f64) -> Result<CountReport> {
    require_complete(set, t)?;
    let q = set.params.q();
    let computed = set.window(set.t_a, t).len();
    let main = main_term(q, t);
    let difference = computed as f64 - main;
    let log_qt = (q as f64 * t).ln();
    Ok(CountReport {
        t,
        computed,
        main_term: main,
        difference,
        normalized: difference / log_qt,
        within_bound: difference.abs() <= 5.0 * log_qt,
    })
}
