//! `L(s; f) = Σ f(n) n^{−s}` on the whole plane.

mod afe;
mod euler;

pub use afe::{eval_l_afe, AfeParams, AfeValue, DEFAULT_TAU0};
pub use euler::truncated_euler;

use crate::delta::{delta, DeltaParams};
use crate::periodic::PeriodicFunction;
use crate::specfun::{bernoulli::bernoulli_weight, real_pow, weighted_hurwitz, EulerMaclaurinConfig};
use crate::{error::domain, Result, C64};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LEvalStrategy {
    pub sigma_series_threshold: f64,
    pub hurwitz: EulerMaclaurinConfig,
    pub series_tail_tol: f64,
}

impl Default for LEvalStrategy {
    fn default() -> Self {
        LEvalStrategy {
            sigma_series_threshold: 1.5,
            hurwitz: EulerMaclaurinConfig::default(),
            series_tail_tol: 1e-13,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LMethod {
    Series,
    Hurwitz,
}

impl LEvalStrategy {
    pub fn method_for(&self, s: C64) -> LMethod {
        if s.re >= self.sigma_series_threshold {
            LMethod::Series
        } else {
            LMethod::Hurwitz
        }
    }
}

/// `L(s; f)`, by the Dirichlet series far right and by Hurwitz zeta
/// functions elsewhere.
pub fn eval_l(s: C64, f: &PeriodicFunction, strategy: &LEvalStrategy) -> Result<C64> {
    if !(strategy.sigma_series_threshold > 1.0) {
        return Err(domain("series threshold must exceed 1"));
    }
    match strategy.method_for(s) {
        LMethod::Series => eval_l_series(s, f, strategy.series_tail_tol),
        LMethod::Hurwitz => eval_l_hurwitz(s, f, &strategy.hurwitz),
    }
}

/// `q^{−s} Σ_a f(a) ζ(s, a/q)`.
pub fn eval_l_hurwitz(s: C64, f: &PeriodicFunction, cfg: &EulerMaclaurinConfig) -> Result<C64> {
    let q = f.q();
    let classes: Vec<(f64, C64)> =
        (1..=q).map(|a| (a as f64 / q as f64, f.at(a as i64))).collect();
    let (v, _) = weighted_hurwitz(s, &classes, cfg)?;
    Ok(v * real_pow(q as f64, s))
}

/// Direct summation for `Re s > 1`: terms `n ≤ Mq` plus a short
/// Euler–Maclaurin tail per residue class, with `M` large enough that the
/// first omitted tail term is below `tail_tol`.
pub fn eval_l_series(s: C64, f: &PeriodicFunction, tail_tol: f64) -> Result<C64> {
    if !(s.re > 1.0) {
        return Err(domain(format!("series route needs Re s > 1, got {}", s.re)));
    }
    let q = f.q();
    let qf = q as f64;
    let mass: f64 = f.values().iter().map(|z| z.norm()).sum();
    if mass == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    // First omitted term B_6/6! (s)_5 X^{−σ−5} with X = M + 1/q, per class.
    let poch5 = (0..5).fold(1.0, |acc, j| acc * (s + j as f64).norm());
    let w3 = bernoulli_weight(3).abs();
    let mut m = 4usize;
    loop {
        let x = m as f64 + 1.0 / qf;
        let bound = w3 * poch5 * x.powf(-s.re - 5.0) * qf.powf(-s.re) * mass;
        if bound <= tail_tol && x * qf >= 2.0 * s.norm() {
            break;
        }
        m *= 2;
    }
    let n_max = m * q;
    let head: C64 = (1..=n_max)
        .rev()
        .map(|n| f.at(n as i64) * real_pow(n as f64, s))
        .sum();
    let mut tail = C64::new(0.0, 0.0);
    for a in 1..=q {
        let fa = f.at(a as i64);
        if fa == C64::new(0.0, 0.0) {
            continue;
        }
        let x = m as f64 + a as f64 / qf;
        let xs = real_pow(x, s);
        let t = xs * x / (s - 1.0) + 0.5 * xs + bernoulli_weight(1) * s * xs / x
            + bernoulli_weight(2) * s * (s + 1.0) * (s + 2.0) * xs / (x * x * x);
        tail += fa * t;
    }
    Ok(head + tail * real_pow(qf, s))
}

/// `|L(s; f) − Δ(s) L(1−s; f⁺)| / (1 + |L(s; f)|)`.
pub fn functional_eq_residual(s: C64, f: &PeriodicFunction) -> Result<f64> {
    let p = DeltaParams::from_function(f)?;
    let strategy = LEvalStrategy::default();
    let lhs = eval_l(s, f, &strategy)?;
    let dual = eval_l(1.0 - s, &f.dft(1), &strategy)?;
    let rhs = delta(s, &p)? * dual;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn chi4() -> PeriodicFunction {
        PeriodicFunction::from_real(4, &[1.0, 0.0, -1.0, 0.0]).unwrap()
    }

    #[test]
    fn examples() {
        let st = LEvalStrategy::default();
        let one = PeriodicFunction::one();
        assert!((eval_l(c(2.0, 0.0), &one, &st).unwrap() - PI * PI / 6.0).norm() < 1e-13);
        assert!((eval_l(c(0.0, 0.0), &one, &st).unwrap() + 0.5).norm() < 1e-14);
        assert!((eval_l(c(1.0, 0.0), &chi4(), &st).unwrap() - PI / 4.0).norm() < 1e-13);
        assert!(matches!(eval_l(c(1.0, 0.0), &one, &st), Err(crate::Error::Pole(_))));
    }

    #[test]
    fn leibniz_brute_force() {
        // Alternating series: partial sums bracket π/4 within the next term.
        let n = 2_000_000u64;
        let partial: f64 = (0..n).rev().map(|k| (-1f64).powi(k as i32) / (2 * k + 1) as f64).sum();
        let st = LEvalStrategy::default();
        let v = eval_l(c(1.0, 0.0), &chi4(), &st).unwrap();
        assert!((v.re - partial).abs() <= 1.0 / (2 * n + 1) as f64);
    }

    #[test]
    fn series_and_hurwitz_agree() {
        let f = PeriodicFunction::new(3, vec![c(1.0, 0.5), c(1.0, 0.5), c(-2.0, 0.0)]).unwrap();
        for s in [c(1.5, 0.0), c(2.0, 50.0), c(2.5, -100.0), c(1.5, 99.0)] {
            let a = eval_l_series(s, &f, 1e-13).unwrap();
            let b = eval_l_hurwitz(s, &f, &EulerMaclaurinConfig::default()).unwrap();
            assert!((a - b).norm() < 1e-11, "{s}: {a} vs {b}");
        }
    }

    #[test]
    fn zeta_off_axis() {
        // mpmath.zeta(0.3 + 20j)
        let v = eval_l(c(0.3, 20.0), &PeriodicFunction::one(), &LEvalStrategy::default()).unwrap();
        assert!((v - c(0.268994415753987, -1.288423418048304)).norm() < 1e-12);
    }

    #[test]
    fn functional_equation_examples() {
        let one = PeriodicFunction::one();
        assert!(functional_eq_residual(c(0.3, 20.0), &one).unwrap() <= 1e-8);
        assert!(functional_eq_residual(c(0.7, 35.0), &chi4()).unwrap() <= 1e-8);
        let neither = PeriodicFunction::from_real(3, &[1.0, 2.0, 5.0]).unwrap();
        assert!(functional_eq_residual(c(0.5, 10.0), &neither).is_err());
    }
}
