//! Hurwitz zeta function by Euler–Maclaurin summation.

use super::bernoulli::{bernoulli_weight, MAX_INDEX};
use crate::{error::domain, Error, Result, C64};
use std::f64::consts::PI;

/// Parameters of the Euler–Maclaurin continuation.
///
/// With `cutoff = None` the cutoff is `max(⌈|t|⌉, 10)` and is doubled (at
/// most four times) when the Bernoulli tail cannot reach `target_abs_tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerMaclaurinConfig {
    pub cutoff: Option<usize>,
    pub corrections: usize,
    pub target_abs_tol: f64,
}

impl Default for EulerMaclaurinConfig {
    fn default() -> Self {
        EulerMaclaurinConfig { cutoff: None, corrections: 15, target_abs_tol: 1e-13 }
    }
}

impl EulerMaclaurinConfig {
    pub fn fixed(cutoff: usize, corrections: usize) -> Self {
        EulerMaclaurinConfig { cutoff: Some(cutoff), corrections, ..Default::default() }
    }

    /// The cutoff used at height `t` before any adaptive doubling.
    pub fn initial_cutoff(&self, t: f64) -> usize {
        self.cutoff.unwrap_or_else(|| (t.abs().ceil() as usize).max(10))
    }

    /// Number of corrections at `Re s = sigma`: at least `corrections`, and
    /// enough that `σ ≥ 3 − 2K`.
    pub fn corrections_for(&self, sigma: f64) -> Result<usize> {
        if self.corrections == 0 || self.corrections > MAX_INDEX {
            return Err(domain(format!("corrections must be in 1..=30, got {}", self.corrections)));
        }
        if sigma <= 1.0 - 2.0 * MAX_INDEX as f64 {
            return Err(Error::ContinuationRange(sigma));
        }
        let need = ((3.0 - sigma) / 2.0).ceil().max(1.0) as usize;
        Ok(self.corrections.max(need).min(MAX_INDEX))
    }
}

/// `x^{-s}` for real `x > 0`.
pub fn real_pow(x: f64, s: C64) -> C64 {
    let l = x.ln();
    let (sin, cos) = (s.im * l).sin_cos();
    (-s.re * l).exp() * C64::new(cos, -sin)
}

/// `(e^u − 1)/u`, accurate near `u = 0`.
fn expm1_ratio(u: C64) -> C64 {
    if u.norm() < 0.5 {
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..=24 {
            term *= u / k as f64;
            sum += term;
        }
        sum
    } else {
        (u.exp() - 1.0) / u
    }
}

/// Bernoulli corrections `Σ_k B_{2k}/(2k)! (s)_{2k−1} x^{−s−2k+1}`; at least
/// `k_min` terms, extended while the next term exceeds `tol` and still
/// shrinks. Returns the sum and the size of the first omitted term.
fn corrections(s: C64, x: f64, x_pow: C64, k_min: usize, tol: f64) -> (C64, f64) {
    let inv_x2 = 1.0 / (x * x);
    let mut poch = s;
    let mut pow = x_pow / x;
    let mut sum = C64::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..=MAX_INDEX {
        let term = bernoulli_weight(k) * poch * pow;
        let size = term.norm();
        if k > k_min && (size <= tol || size > last) {
            return (sum, size);
        }
        sum += term;
        last = size;
        let two_k = 2.0 * k as f64;
        poch *= (s + two_k - 1.0) * (s + two_k);
        pow *= inv_x2;
    }
    // First omitted weight from |B_{2k}|/(2k)! ≈ 2/(2π)^{2k}.
    let next = 2.0 * (2.0 * PI).powi(-2 * (MAX_INDEX as i32 + 1)) * poch.norm() * pow.norm();
    (sum, next)
}

/// `Σ_a w_a ζ(s, α_a)` with the pole parts `w_a (M+α_a)^{1−s}/(s−1)`
/// combined, so that the result stays finite at `s = 1` when `Σ w_a = 0`.
/// Returns the value and an absolute error estimate.
pub(crate) fn weighted_hurwitz(
    s: C64,
    classes: &[(f64, C64)],
    cfg: &EulerMaclaurinConfig,
) -> Result<(C64, f64)> {
    let k_min = cfg.corrections_for(s.re)?;
    let weight_sum: C64 = classes.iter().map(|(_, w)| w).sum();
    let scale = classes.iter().map(|(_, w)| w.norm()).fold(0.0, f64::max);
    let at_one = s == C64::new(1.0, 0.0);
    if at_one && weight_sum.norm() > 1e-12 * scale {
        return Err(Error::Pole(s));
    }
    let mut m = cfg.initial_cutoff(s.im);
    let mut doublings = 0;
    loop {
        let mut total = C64::new(0.0, 0.0);
        let mut err = 0.0;
        for &(alpha, w) in classes {
            if w == C64::new(0.0, 0.0) {
                continue;
            }
            let partial: C64 = (0..m).map(|j| real_pow(j as f64 + alpha, s)).sum();
            let x = m as f64 + alpha;
            let x_pow = real_pow(x, s);
            let (corr, e) = corrections(s, x, x_pow, k_min, cfg.target_abs_tol / scale.max(1e-300));
            // (x^{1−s} − 1)/(s − 1) = −log x · (e^u − 1)/u with u = (1−s) log x
            let lx = x.ln();
            let h = -lx * expm1_ratio((1.0 - s) * lx);
            total += w * (partial + 0.5 * x_pow + corr + h);
            err += w.norm() * e;
        }
        if !at_one {
            total += weight_sum / (s - 1.0);
        }
        if err <= cfg.target_abs_tol || cfg.cutoff.is_some() || doublings == 4 {
            return Ok((total, err));
        }
        m *= 2;
        doublings += 1;
    }
}

/// `ζ(s, α) = Σ_{m≥0} (m+α)^{−s}`, continued to `Re s > −59`.
pub fn hurwitz_zeta(s: C64, alpha: f64, cfg: &EulerMaclaurinConfig) -> Result<C64> {
    hurwitz_zeta_with_error(s, alpha, cfg).map(|(v, _)| v)
}

pub fn hurwitz_zeta_with_error(s: C64, alpha: f64, cfg: &EulerMaclaurinConfig) -> Result<(C64, f64)> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if s == C64::new(1.0, 0.0) {
        return Err(Error::Pole(s));
    }
    weighted_hurwitz(s, &[(alpha, C64::new(1.0, 0.0))], cfg)
}
