use crate::apoints::PointSet;
use crate::{error::domain, Result, C64};
use serde::Serialize;
use std::f64::consts::PI;

/// Every ingredient of the power-sum bound at `(x, T, T′)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundBudget {
    pub x: f64,
    pub t: f64,
    pub t_prime: f64,
    pub c: f64,
    /// `1/2 + c / log(qT/2π)`.
    pub alpha: f64,
    /// `⌊2 log(qT/4π) / log 30⌋`.
    pub m: i64,
    pub j_x: Option<u32>,
    pub e1: f64,
    pub e2: f64,
    pub full_bound: f64,
    /// `x^{1/2} log T (1 + 1/|log x|)`, when `4π/(qT) ≤ x ≤ qT/4π`.
    pub reduced_bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSumReport {
    pub count: usize,
    pub sum: C64,
    pub budget: BoundBudget,
    /// `|sum|` over the reduced bound when available, else the full bound.
    pub c_fit: f64,
}

impl BoundBudget {
    /// `c` is the least constant with `|β − 1/2| ≤ c / (2 log(qT/2π))` on
    /// the supplied real parts.
    pub fn new(q: usize, a: C64, x: f64, t: f64, t_prime: f64, betas: &[f64]) -> Result<Self> {
        if !(x > 0.0) || x == 1.0 {
            return Err(domain(format!("x must be positive and different from 1, got {x}")));
        }
        let qf = q as f64;
        let floor = (4.0 * PI / qf).max(1.0);
        if !(t >= floor && t + 1.0 <= t_prime && t_prime <= 2.0 * t) {
            return Err(domain(format!("need max(1, 4π/q) <= T < T+1 <= T' <= 2T, got T={t}, T'={t_prime}")));
        }
        let l = (qf * t / (2.0 * PI)).ln();
        let c = betas.iter().map(|b| 2.0 * (b - 0.5).abs() * l).fold(0.0, f64::max);
        let alpha = 0.5 + c / l;
        let m = (2.0 * (qf * t / (4.0 * PI)).ln() / 30f64.ln()).floor() as i64;
        let lx = x.ln();
        let (lo, hi) = (qf * t / (4.0 * PI), 5.0 * qf * t / (4.0 * PI));
        let j_x = (1..=m.max(0) as u32).find(|&j| {
            let r = x.powf(lx.signum() / j as f64);
            (lo..=hi).contains(&r)
        });
        let sqrt_t = t.sqrt();
        let xc = x.powf(c / l);
        let (mut e1, mut e2) = (0.0, 0.0);
        if let Some(j) = j_x {
            let jf = j as f64;
            let pre = x.sqrt() * lx / jf.powf(1.5);
            let aj = a.norm().powf(jf);
            let damp = 30f64.powf(jf);
            if x > 1.0 {
                e1 = pre * (x.powf(1.0 / (2.0 * jf)) / aj + xc * sqrt_t / damp);
            } else {
                e2 = pre * (x.powf(-1.0 / (2.0 * jf)) * aj + sqrt_t / (xc * damp));
            }
        }
        let log_t = t.ln();
        let full_bound = x.sqrt() * (xc + 1.0 / xc) * (lx.abs() + log_t + log_t / lx.abs()) + e1 - e2;
        let reduced_bound = (4.0 * PI / (qf * t) <= x && x <= qf * t / (4.0 * PI))
            .then(|| x.sqrt() * log_t * (1.0 + 1.0 / lx.abs()));
        Ok(BoundBudget { x, t, t_prime, c, alpha, m, j_x, e1, e2, full_bound, reduced_bound })
    }
}

/// `Σ x^{δ_a}` over `T < γ ≤ T′`.
pub fn power_sum(set: &PointSet, x: f64, t: f64, t_prime: f64) -> Result<PowerSumReport> {
    set.require_covers(t, t_prime)?;
    let pts = set.window(t, t_prime);
    let betas: Vec<f64> = pts.iter().map(|p| p.beta).collect();
    let budget = BoundBudget::new(set.params.q(), set.a, x, t, t_prime, &betas)?;
    let lx = x.ln();
    let sum: C64 = pts.iter().map(|p| (p.s() * lx).exp()).sum();
    let c_fit = sum.norm() / budget.reduced_bound.unwrap_or(budget.full_bound);
    Ok(PowerSumReport { count: pts.len(), sum, budget, c_fit })
}

/// `|Σ(x, a) − x · conj Σ(1/x, 1/conj a)| / |Σ(x, a)|`.
pub fn duality_gap(sum_a: C64, sum_dual: C64, x: f64) -> f64 {
    (sum_a - x * sum_dual.conj()).norm() / sum_a.norm().max(f64::MIN_POSITIVE)
}
