//! The factor `Δ(s) = Δ(s; f)` of the functional equation
//! `L(s; f) = Δ(s) L(1 − s; f⁺)`, which depends only on `q` and the parity.

use crate::arith::sincos_pi;
use crate::periodic::PeriodicFunction;
use crate::specfun::{digamma, log_gamma};
use crate::{error::domain, Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

/// Inputs closer than this to a pole or zero of `Δ` are rejected.
pub const SINGULAR_RADIUS: f64 = 1e-6;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaParams {
    q: usize,
    delta: i8,
}

impl DeltaParams {
    pub fn new(q: usize, delta: i8) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroPeriod);
        }
        if delta != 1 && delta != -1 {
            return Err(domain(format!("delta must be +1 or -1, got {delta}")));
        }
        Ok(DeltaParams { q, delta })
    }

    pub fn from_function(f: &PeriodicFunction) -> Result<Self> {
        Self::new(f.q(), f.delta_sign()?)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn delta(&self) -> i8 {
        self.delta
    }

    fn sign(&self) -> f64 {
        self.delta as f64
    }

    /// `log(q/2π)`.
    fn log_q_2pi(&self) -> f64 {
        (self.q as f64 / (2.0 * PI)).ln()
    }

    /// `2π/q`, below which the phase is not monotone.
    pub fn monotone_threshold(&self) -> f64 {
        2.0 * PI / self.q as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Singularity {
    Pole,
    Zero,
}

/// Nearest pole/zero of `Δ` within [`SINGULAR_RADIUS`], with its distance.
fn nearby_singularity(s: C64, p: &DeltaParams) -> Option<(Singularity, f64)> {
    let n = s.re.round();
    let d = (s - n).norm();
    if d >= SINGULAR_RADIUS {
        return None;
    }
    let odd = (n as i64).rem_euclid(2) == 1;
    let kind = match (p.delta, n > 0.0) {
        (1, true) if odd => Singularity::Pole,
        (-1, true) if !odd => Singularity::Pole,
        (1, false) if !odd => Singularity::Zero,
        (-1, false) if odd && n < 0.0 => Singularity::Zero,
        _ => return None,
    };
    Some((kind, d))
}

/// `e^{iπs}` with exact trigonometry at half-integers.
fn exp_i_pi(s: C64) -> C64 {
    let (sin, cos) = sincos_pi(s.re);
    (-PI * s.im).exp() * C64::new(cos, sin)
}

/// `log Δ(s)` on some branch; exponentiating gives `Δ(s)` without overflow.
pub fn log_delta(s: C64, p: &DeltaParams) -> Result<C64> {
    match nearby_singularity(s, p) {
        Some((Singularity::Pole, _)) => return Err(Error::Pole(s)),
        Some((Singularity::Zero, 0.0)) => return Ok(C64::new(f64::NEG_INFINITY, 0.0)),
        _ => {}
    }
    let d = p.sign();
    let upper = s.im >= 0.0;
    // e^{iπs} for t ≥ 0 and e^{−iπs} for t < 0 both have modulus ≤ 1.
    let w = if upper { exp_i_pi(s) } else { exp_i_pi(-s) };
    let half = I * FRAC_PI_2 * s;
    let common = (1.0 - s) * p.log_q_2pi() - 0.5 * (p.q as f64).ln();
    if s.re >= 0.5 {
        // Δ = π (q/2π)^{1−s} / (√q Γ(s) T(s)),  T = (e^{iπs/2} + δ e^{−iπs/2})/2
        let log_t = if upper {
            let lead = if d > 0.0 { C64::new(0.0, 0.0) } else { I * PI };
            lead - half - LN_2 + (1.0 + d * w).ln()
        } else {
            half - LN_2 + (1.0 + d * w).ln()
        };
        Ok(PI.ln() + common - log_gamma(s)? - log_t)
    } else {
        // Δ = −i (q/2π)^{1−s} Γ(1−s) U(s)/√q,  U = e^{iπs/2} − δ e^{−iπs/2}
        let log_u = if upper {
            let lead = if d > 0.0 { I * PI } else { C64::new(0.0, 0.0) };
            lead - half + (1.0 - d * w).ln()
        } else {
            half + (1.0 - d * w).ln()
        };
        Ok(-I * FRAC_PI_2 + common + log_gamma(1.0 - s)? + log_u)
    }
}

/// `Δ(s) = −i (q/2π)^{1−s} Γ(1−s) q^{−1/2} (e(s/4) − δ e(−s/4))`.
pub fn delta(s: C64, p: &DeltaParams) -> Result<C64> {
    log_delta(s, p).map(C64::exp)
}

/// `Δ'(s)/Δ(s)`.
pub fn delta_log_deriv(s: C64, p: &DeltaParams) -> Result<C64> {
    match nearby_singularity(s, p) {
        Some((Singularity::Pole, _)) => return Err(Error::Pole(s)),
        Some((Singularity::Zero, _)) => return Err(Error::Zero(s)),
        None => {}
    }
    let d = p.sign();
    let upper = s.im >= 0.0;
    let w = if upper { exp_i_pi(s) } else { exp_i_pi(-s) };
    let ipi2 = I * FRAC_PI_2;
    if s.re >= 0.5 {
        // T'/T = (iπ/2)(e^{iπs/2} − δe^{−iπs/2})/(e^{iπs/2} + δe^{−iπs/2})
        let ratio = if upper { (w - d) / (w + d) } else { (1.0 - d * w) / (1.0 + d * w) };
        Ok(-p.log_q_2pi() - digamma(s)? - ipi2 * ratio)
    } else {
        // U'/U = (iπ/2)(e^{iπs/2} + δe^{−iπs/2})/(e^{iπs/2} − δe^{−iπs/2})
        let ratio = if upper { (w + d) / (w - d) } else { (1.0 + d * w) / (1.0 - d * w) };
        Ok(-p.log_q_2pi() - digamma(1.0 - s)? + ipi2 * ratio)
    }
}

/// `log Δ(s)` and `Δ'(s)/Δ(s)` together.
pub fn log_delta_with_deriv(s: C64, p: &DeltaParams) -> Result<(C64, C64)> {
    Ok((log_delta(s, p)?, delta_log_deriv(s, p)?))
}

/// Leading term `δ (qt/2π)^{1/2−σ−it} e^{i(t+π/4)}`, valid for `t ≥ 1`.
pub fn delta_main_term(s: C64, p: &DeltaParams) -> Result<C64> {
    if s.im < 1.0 {
        return Err(domain(format!("main term needs Im s >= 1, got {}", s.im)));
    }
    let l = (p.q as f64 * s.im / (2.0 * PI)).ln();
    Ok(p.sign() * ((0.5 - s) * l + I * (s.im + FRAC_PI_4)).exp())
}

/// Asymptotic phase of `Δ(1/2 + it)` and its derivative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhasePoint {
    pub t: f64,
    pub phase: f64,
    pub derivative: f64,
}

/// `Φ(t) = t − t log(qt/2π) + π/4 + (1−δ)π/2`, `Φ'(t) = −log(qt/2π)`.
pub fn phase(t: f64, p: &DeltaParams) -> Result<PhasePoint> {
    if !(t > p.monotone_threshold()) {
        return Err(domain(format!("phase needs t > 2π/q = {}, got {t}", p.monotone_threshold())));
    }
    Ok(phase_unchecked(t, p))
}

pub(crate) fn phase_unchecked(t: f64, p: &DeltaParams) -> PhasePoint {
    let l = (p.q as f64 * t / (2.0 * PI)).ln();
    let shift = if p.delta == 1 { 0.0 } else { PI };
    PhasePoint { t, phase: t - t * l + FRAC_PI_4 + shift, derivative: -l }
}

/// `1/2 − log|a| / log(qγ/2π)`.
pub fn predicted_beta(gamma: f64, a: C64, p: &DeltaParams) -> Result<f64> {
    if a == C64::new(0.0, 0.0) {
        return Err(domain("a must be nonzero"));
    }
    let floor = (4.0 * PI / p.q as f64).max(1.0);
    if gamma < floor {
        return Err(domain(format!("predicted_beta needs gamma >= {floor}, got {gamma}")));
    }
    Ok(0.5 - a.norm().ln() / (p.q as f64 * gamma / (2.0 * PI)).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn zeta_params() -> DeltaParams {
        DeltaParams::new(1, 1).unwrap()
    }

    /// Riemann–Siegel θ from the Stirling oracle: Δ(1/2+it; 1) = e^{−2iθ(t)}.
    fn theta(t: f64) -> f64 {
        let lg = crate::specfun::stirling_log_gamma(c(0.25, 0.5 * t));
        lg.im - 0.5 * t * PI.ln()
    }

    #[test]
    fn gram_point_is_a_one_point() {
        // g_0 from mpmath.grampoint(0)
        let g0 = 17.845_599_540_410_860_8;
        assert!(theta(g0).abs() < 1e-12);
        let d = delta(c(0.5, g0), &zeta_params()).unwrap();
        assert!((d - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn matches_theta_on_critical_line() {
        for t in [5.0, 30.0, 555.5, 9876.0] {
            let d = delta(c(0.5, t), &zeta_params()).unwrap();
            let want = C64::from_polar(1.0, -2.0 * theta(t));
            assert!((d - want).norm() < 1e-10 * t.max(1.0), "t = {t}");
        }
    }

    #[test]
    fn zeros_and_poles() {
        let p = zeta_params();
        assert_eq!(delta(c(-2.0, 0.0), &p).unwrap(), c(0.0, 0.0));
        assert!(delta(c(-2.0 + 1e-3, 0.0), &p).unwrap().norm() < 1e-3);
        assert!(matches!(delta(c(1.0, 0.0), &p), Err(Error::Pole(_))));
        assert!(matches!(delta(c(3.0, 1e-7), &p), Err(Error::Pole(_))));
        assert!(delta(c(2.0, 0.0), &p).is_ok());
        let odd = DeltaParams::new(4, -1).unwrap();
        assert!(matches!(delta(c(2.0, 0.0), &odd), Err(Error::Pole(_))));
        assert_eq!(delta(c(-1.0, 0.0), &odd).unwrap(), c(0.0, 0.0));
        assert!(delta(c(0.0, 0.0), &odd).unwrap().norm() > 0.1);
        assert!(matches!(delta_log_deriv(c(-3.0, 0.0), &odd), Err(Error::Zero(_))));
        assert!(matches!(delta_log_deriv(c(-2.0, 0.0), &p), Err(Error::Zero(_))));
    }

    #[test]
    fn zeta_closed_form_at_zero() {
        // Δ(0; 1) = ζ(0)/ζ(1 − 0) is 0 · ∞; use s = 2 instead: Δ(2) = ζ(2)/ζ(−1) = −2π².
        let d = delta(c(2.0, 0.0), &zeta_params()).unwrap();
        assert!((d - c(-2.0 * PI * PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn log_deriv_examples() {
        let p = zeta_params();
        let t = 200.0;
        let v = delta_log_deriv(c(0.5, t), &p).unwrap();
        assert!((v - c(-(t / (2.0 * PI)).ln(), 0.0)).norm() < 3.0 / t);
        let s = c(0.3, 40.0);
        let h = 1e-5;
        let fd = (log_delta(s + c(0.0, h), &p).unwrap() - log_delta(s - c(0.0, h), &p).unwrap())
            / c(0.0, 2.0 * h);
        assert!((fd - delta_log_deriv(s, &p).unwrap()).norm() < 1e-6);
        for q in [1, 4, 7] {
            for d in [1, -1] {
                let p = DeltaParams::new(q, d).unwrap();
                for s in [c(0.2, 13.0), c(0.8, 7.5), c(-0.5, 2.0)] {
                    let a = delta_log_deriv(s.conj(), &p).unwrap();
                    let b = delta_log_deriv(s, &p).unwrap().conj();
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn main_term_examples() {
        let p = zeta_params();
        let s = c(0.5, 100.0);
        let ratio = delta(s, &p).unwrap() / delta_main_term(s, &p).unwrap();
        assert!((ratio - 1.0).norm() < 0.02);
        let want = (100.0 / (2.0 * PI)).powf(-1.5);
        assert!((want - 0.0157).abs() < 1e-4);
        assert!((delta(c(2.0, 100.0), &p).unwrap().norm() / want - 1.0).abs() < 0.02);
        let want = (100.0 / (2.0 * PI)).powf(1.5);
        assert!((want - 63.5).abs() < 0.05);
        assert!((delta(c(-1.0, 100.0), &p).unwrap().norm() / want - 1.0).abs() < 0.02);
        assert!(delta_main_term(c(0.5, 0.5), &p).is_err());
    }

    #[test]
    fn phase_examples() {
        let p = zeta_params();
        let g0 = 17.845_599_540_410_860_8;
        let ph = phase(g0, &p).unwrap();
        let r = ph.phase - 2.0 * PI * (ph.phase / (2.0 * PI)).round();
        // The next Stirling term is 1/(24t).
        assert!(r.abs() < 0.05 / g0);
        let at = phase(2.0 * PI * std::f64::consts::E, &p).unwrap();
        assert!((at.derivative + 1.0).abs() < 1e-14);
        let odd = DeltaParams::new(4, -1).unwrap();
        let even = DeltaParams::new(4, 1).unwrap();
        let diff = phase(10.0, &odd).unwrap().phase - phase(10.0, &even).unwrap().phase;
        assert!((diff - PI).abs() < 1e-14);
        assert!(phase(1.0, &p).is_err());
    }

    #[test]
    fn predicted_beta_examples() {
        let p = zeta_params();
        assert_eq!(predicted_beta(123.0, C64::from_polar(1.0, 0.7), &p).unwrap(), 0.5);
        let e = std::f64::consts::E;
        let gamma = 2.0 * PI * e * e;
        assert!(predicted_beta(gamma, c(e, 0.0), &p).unwrap().abs() < 1e-15);
        let b = predicted_beta(1000.0, c(2.0, 0.0), &p).unwrap();
        assert!((b - 0.363_281_295_6).abs() < 1e-9);
        assert!(predicted_beta(100.0, c(0.0, 0.0), &p).is_err());
        assert!(predicted_beta(5.0, c(1.0, 0.0), &p).is_err());
    }
}
