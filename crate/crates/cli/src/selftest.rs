//! Sampled identity suites, shared by `lperiodic selftest` and the
//! acceptance run. Every suite draws 200 points from a fixed seed.

use crate::CliResult;
use lperiodic::delta::{delta, delta_log_deriv, DeltaParams};
use lperiodic::lfunction::{eval_l, eval_l_afe, eval_l_hurwitz, eval_l_series, functional_eq_residual, AfeParams, LEvalStrategy};
use lperiodic::periodic::{character_table, PeriodicFunction};
use lperiodic::specfun::{digamma, log_gamma};
use lperiodic::C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SAMPLES: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn random_function(rng: &mut ChaCha8Rng) -> PeriodicFunction {
    let q = rng.gen_range(1..=12);
    let values = (0..q).map(|_| C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
    PeriodicFunction::new(q, values).expect("length matches")
}

/// Even or odd part of a random function.
fn random_parity_function(rng: &mut ChaCha8Rng) -> PeriodicFunction {
    loop {
        let f = random_function(rng);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let q = f.q() as i64;
        let v = (1..=q).map(|n| 0.5 * (f.at(n) + sign * f.at(-n))).collect();
        let g = PeriodicFunction::new(f.q(), v).expect("length matches");
        if !g.is_zero() {
            return g;
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng) -> DeltaParams {
    DeltaParams::new(rng.gen_range(1..=30), if rng.gen_bool(0.5) { 1 } else { -1 }).expect("valid")
}

fn suite(
    name: &'static str,
    tolerance: f64,
    seed: u64,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> CliResult<f64>,
) -> CliResult<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..SAMPLES {
        worst = worst.max(sample(&mut rng)?);
    }
    Ok(SuiteResult { name, samples: SAMPLES, max_residual: worst, tolerance, passed: worst <= tolerance })
}

pub fn run_all() -> CliResult<Vec<SuiteResult>> {
    let strategy = LEvalStrategy::default();
    Ok(vec![
        suite("fourier_inversion", 1e-12, 1, |rng| {
            let f = random_function(rng);
            let back = f.dft(1).dft(-1);
            Ok(f.values().iter().zip(back.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
        })?,
        suite("delta_identity", 1e-10, 2, |rng| {
            let p = random_params(rng);
            let s = C64::new(rng.gen_range(-3.0..4.0), rng.gen_range(1.0..1000.0));
            Ok((delta(s, &p)? * delta(1.0 - s, &p)? - p.delta() as f64).norm())
        })?,
        suite("delta_reflection", 1e-12, 3, |rng| {
            let p = random_params(rng);
            let s = C64::new(rng.gen_range(-3.0..4.0), rng.gen_range(1.0..1000.0));
            let d = p.delta() as f64;
            let value = delta(s, &p)?;
            let v = (delta(s.conj(), &p)? - d * value.conj()).norm() / (1.0 + value.norm());
            let ld = delta_log_deriv(s, &p)?;
            let dv = (delta_log_deriv(s.conj(), &p)? - ld.conj()).norm() / (1.0 + ld.norm());
            Ok(v.max(dv))
        })?,
        suite("log_gamma_reflection", 1e-12, 4, |rng| {
            let z = C64::new(rng.gen_range(-5.0..5.0), rng.gen_range(1.0..500.0));
            let (up, down) = (log_gamma(z)?, log_gamma(z.conj())?);
            Ok((up.re - down.re).abs() / (1.0 + up.re.abs()))
        })?,
        suite("functional_equation", 1e-8, 5, |rng| {
            let f = random_parity_function(rng);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let s = C64::new(rng.gen_range(0.01..0.99), sign * rng.gen_range(0.5..100.0));
            Ok(functional_eq_residual(s, &f)?)
        })?,
        suite("method_agreement", 1e-9, 6, |rng| {
            let f = random_function(rng);
            let s = C64::new(rng.gen_range(1.5..3.0), rng.gen_range(-200.0..200.0));
            let a = eval_l_series(s, &f, strategy.series_tail_tol)?;
            let b = eval_l_hurwitz(s, &f, &strategy.hurwitz)?;
            Ok((a - b).norm())
        })?,
        suite("digamma_finite_difference", 1e-7, 7, |rng| {
            let z = C64::new(rng.gen_range(0.1..30.0), rng.gen_range(-40.0..40.0));
            let h = 1e-5;
            let fd = (log_gamma(z + h)? - log_gamma(z - h)?) / (2.0 * h);
            Ok((digamma(z)? - fd).norm() / (1.0 + fd.norm()))
        })?,
        // ratio of the actual AFE error to its own estimate
        suite("afe_vs_direct", 5.0, 8, |rng| {
            let r = [1usize, 3, 4, 5, 7, 8][rng.gen_range(0..6)];
            let table = character_table(r)?;
            let chi = &table[rng.gen_range(0..table.len())];
            let t = rng.gen_range(20.0..400.0);
            let s = C64::new(rng.gen_range(0.05..0.95), t);
            let afe = eval_l_afe(s, chi, &AfeParams::balanced(r, t)?)?;
            let direct = eval_l(s, &chi.to_periodic(), &strategy)?;
            Ok((afe.value - direct).norm() / afe.error_estimate)
        })?,
    ])
}
