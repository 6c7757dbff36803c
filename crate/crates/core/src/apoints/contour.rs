use super::{APoint, CountCertificate, Rect};
use crate::delta::{log_delta_with_deriv, DeltaParams};
use crate::quadrature::integrate;
use crate::{error::domain, Error, Result, C64};
use rayon::prelude::*;
use std::f64::consts::PI;

const MAX_RESIDUAL: f64 = 0.1;
const PANEL_TOL: f64 = 1e-9;
const MAX_DEPTH: u32 = 12;

/// `Δ'(s)/(Δ(s) − a)`, arranged so neither `Δ` nor `1/Δ` overflows.
pub(crate) fn log_deriv_shifted(s: C64, a: C64, p: &DeltaParams) -> Result<C64> {
    let (log_d, ld) = log_delta_with_deriv(s, p)?;
    if log_d.re > 0.0 {
        Ok(ld / (1.0 - a * (-log_d).exp()))
    } else {
        let d = log_d.exp();
        Ok(ld * d / (d - a))
    }
}

/// Number of solutions of `Δ(s) = a` inside `rect`, from the winding
/// integral `(1/2πi)∮ Δ'/(Δ − a) ds` taken with adaptive Gauss–Kronrod.
pub fn count_argument_principle(p: &DeltaParams, a: C64, rect: Rect) -> Result<CountCertificate> {
    if a == C64::new(0.0, 0.0) {
        return Err(domain("a must be nonzero"));
    }
    if !(rect.sigma_lo < rect.sigma_hi && rect.t_lo < rect.t_hi) {
        return Err(domain(format!("degenerate rectangle {rect:?}")));
    }
    if rect.t_lo < 1.0 {
        return Err(domain(format!("rectangle must lie above t = 1, got {}", rect.t_lo)));
    }
    let log_height = (p.q() as f64 * rect.t_hi / (2.0 * PI)).ln();
    let vertical = if log_height > PI { PI / log_height } else { 1.0 };
    let corners = [
        C64::new(rect.sigma_lo, rect.t_lo),
        C64::new(rect.sigma_hi, rect.t_lo),
        C64::new(rect.sigma_hi, rect.t_hi),
        C64::new(rect.sigma_lo, rect.t_hi),
    ];
    let mut panels = Vec::new();
    for k in 0..4 {
        let (z0, z1) = (corners[k], corners[(k + 1) % 4]);
        let len = (z1 - z0).norm();
        let h = if k % 2 == 0 { 0.25 } else { vertical };
        let n = (len / h).ceil().max(1.0) as usize;
        let dir = (z1 - z0) / len;
        let step = len / n as f64;
        panels.extend((0..n).map(|j| (z0 + dir * (j as f64 * step), dir, step)));
    }
    let pieces: Vec<Result<C64>> = panels
        .par_iter()
        .map(|&(z0, dir, len)| {
            let g = |u: f64| log_deriv_shifted(z0 + dir * u, a, p);
            integrate(&g, 0.0, len, PANEL_TOL * len.max(1e-3), MAX_DEPTH).map(|(v, _)| v * dir)
        })
        .collect();
    let mut total = C64::new(0.0, 0.0);
    for piece in pieces {
        total += piece?;
    }
    let z = total / C64::new(0.0, 2.0 * PI);
    let count = z.re.round();
    let residual = (z - count).norm();
    if residual > MAX_RESIDUAL {
        return Err(Error::Quadrature { residual });
    }
    Ok(CountCertificate { rect, count: count as i64, quadrature_residual: residual })
}

/// `Δ'/(Δ − a)(s) − Σ_{|t−γ|≤1} 1/(s − δ_a)`.
pub fn partial_fraction_residual(s: C64, a: C64, p: &DeltaParams, points: &[APoint]) -> Result<C64> {
    if !(-1.0..=2.0).contains(&s.re) || s.im < 1.0 {
        return Err(domain(format!("partial fractions need -1 <= σ <= 2 and t >= 1, got {s}")));
    }
    let mut sum = C64::new(0.0, 0.0);
    for pt in points.iter().filter(|pt| (pt.gamma - s.im).abs() <= 1.0) {
        let d = s - pt.s();
        if d.norm() < 1e-4 {
            return Err(domain(format!("{s} is within 1e-4 of the a-point {}", pt.s())));
        }
        sum += 1.0 / d;
    }
    Ok(log_deriv_shifted(s, a, p)? - sum)
}
