use super::{main_term, require_complete};
use crate::apoints::PointSet;
use crate::delta::DeltaParams;
use crate::lfunction::eval_l_hurwitz;
use crate::periodic::PeriodicFunction;
use crate::specfun::EulerMaclaurinConfig;
use crate::{error::domain, Result, C64};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanValueReport {
    pub t: f64,
    pub count: usize,
    pub sum: C64,
    /// `f(1) + a f⁺(1)`.
    pub coefficient: C64,
    pub main_term: C64,
    pub abs_deviation: f64,
    /// `None` when the main term vanishes.
    pub rel_deviation: Option<f64>,
    /// `abs_deviation / T^0.6`.
    pub envelope_ratio: f64,
    /// Relative change of the sum when every Hurwitz cutoff is doubled.
    pub cutoff_sensitivity: f64,
}

/// `Σ L(δ_a; f)` over `t_a < γ ≤ T` against `(f(1) + a f⁺(1)) (T/2π) log(qT/2πe)`.
pub fn mean_value_sum(set: &PointSet, f: &PeriodicFunction, t: f64, cfg: &EulerMaclaurinConfig) -> Result<MeanValueReport> {
    if DeltaParams::from_function(f)? != set.params {
        return Err(domain("f does not match the (q, δ) of the point set"));
    }
    require_complete(set, t)?;
    let pts = set.window(set.t_a, t);
    let values: Vec<Result<(C64, C64)>> = pts
        .par_iter()
        .map(|pt| {
            let s = pt.s();
            let coarse = eval_l_hurwitz(s, f, cfg)?;
            let doubled = EulerMaclaurinConfig { cutoff: Some(2 * cfg.initial_cutoff(s.im)), ..*cfg };
            Ok((coarse, eval_l_hurwitz(s, f, &doubled)?))
        })
        .collect();
    let mut sum = C64::new(0.0, 0.0);
    let mut check = C64::new(0.0, 0.0);
    for v in values {
        let (a, b) = v?;
        sum += a;
        check += b;
    }
    let coefficient = f.at(1) + set.a * f.dft(1).at(1);
    let main = coefficient * main_term(f.q(), t);
    let abs_deviation = (sum - main).norm();
    let rel_deviation = (main.norm() > 0.0).then(|| abs_deviation / main.norm());
    Ok(MeanValueReport {
        t,
        count: pts.len(),
        sum,
        coefficient,
        main_term: main,
        abs_deviation,
        rel_deviation,
        envelope_ratio: abs_deviation / t.powf(0.6),
        cutoff_sensitivity: (sum - check).norm() / sum.norm().max(f64::MIN_POSITIVE),
    })
}
