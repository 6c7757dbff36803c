use crate::{error::domain, Result, C64};
use serde::Serialize;
use std::f64::consts::PI;

fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// `e(u)` evaluated on the fractional part of `u`.
fn e_frac(u: f64) -> C64 {
    let (s, c) = (2.0 * PI * frac(u)).sin_cos();
    C64::new(c, s)
}

/// Exact star discrepancy of a sample reduced modulo one.
pub fn star_discrepancy(sample: &[f64]) -> Result<f64> {
    if sample.is_empty() {
        return Err(domain("star discrepancy of an empty sample"));
    }
    let mut u: Vec<f64> = sample.iter().map(|&x| frac(x)).collect();
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    Ok(u.iter().enumerate().fold(0.0, |d, (i, &v)| {
        let i = i as f64;
        d.max((i + 1.0) / n - v).max(v - i / n)
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylSumReport {
    pub n: usize,
    pub x: f64,
    pub sum: C64,
    /// `(1/|log x| + |log x|) log N`.
    pub bound_unit: f64,
    pub c_fit: f64,
}

/// `Σ_{N<n≤2N} x^{iγ^{(n)}}` for the ascending ordinates `γ^{(1)}, γ^{(2)}, …`.
pub fn weyl_sum_unimodular(ordinates: &[f64], q: usize, n: usize, x: f64) -> Result<WeylSumReport> {
    if !(x > 0.0) || x == 1.0 {
        return Err(domain(format!("x must be positive and different from 1, got {x}")));
    }
    if n == 0 {
        return Ok(WeylSumReport { n, x, sum: C64::new(0.0, 0.0), bound_unit: 0.0, c_fit: 0.0 });
    }
    let (qf, nf) = (q as f64, n as f64);
    if !(4.0 * PI / (qf * nf) <= x && x <= qf * nf / (4.0 * PI)) {
        return Err(domain(format!("x = {x} outside [4π/(qN), qN/4π] for N = {n}")));
    }
    if ordinates.len() < 2 * n {
        return Err(domain(format!("need {} ordinates, have {}", 2 * n, ordinates.len())));
    }
    let turns = x.ln() / (2.0 * PI);
    let sum: C64 = ordinates[n..2 * n].iter().map(|g| e_frac(g * turns)).sum();
    let lx = x.ln().abs();
    let bound_unit = (1.0 / lx + lx) * nf.ln();
    Ok(WeylSumReport { n, x, sum, bound_unit, c_fit: sum.norm() / bound_unit })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub n: usize,
    pub alpha: f64,
    pub star_discrepancy: f64,
    /// `|Σ_{n≤N} e(kαγ^{(n)})| / N` for `k = 1..=k_max`.
    pub weyl_sums: Vec<f64>,
    /// `(log N)^3 / N`.
    pub threshold: f64,
    pub passed: bool,
}

pub fn weyl_criterion_report(ordinates: &[f64], alpha: f64, k_max: usize) -> Result<DiscrepancyReport> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(domain("alpha must be a nonzero real"));
    }
    if ordinates.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain("ordinates must be ascending"));
    }
    let scaled: Vec<f64> = ordinates.iter().map(|g| alpha * g).collect();
    let star = star_discrepancy(&scaled)?;
    let nf = scaled.len() as f64;
    let weyl_sums: Vec<f64> = (1..=k_max)
        .map(|k| scaled.iter().map(|u| e_frac(k as f64 * u)).sum::<C64>().norm() / nf)
        .collect();
    let threshold = nf.ln().powi(3) / nf;
    let passed = weyl_sums.iter().all(|&w| w <= threshold);
    Ok(DiscrepancyReport { n: scaled.len(), alpha, star_discrepancy: star, weyl_sums, threshold, passed })
}
