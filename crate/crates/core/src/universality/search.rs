use super::{ComplexGrid, GridEvaluator};
use crate::arith::{dist_to_int, primes_up_to};
use crate::lfunction::truncated_euler;
use crate::periodic::{character_decompose, r2_factor, DirichletCharacter, PeriodicFunction};
use crate::{error::domain, Error, Result, C64};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Prime-phase constraint `max_{p ≤ z} ‖γ log p / 2π − ξ_p‖ < ε`; `xi` holds
/// one phase per prime up to `z`, in increasing order of `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimePhases {
    pub z: u64,
    pub xi: Vec<f64>,
}

impl PrimePhases {
    pub fn new(z: u64, xi: Vec<f64>) -> Result<Self> {
        let count = primes_up_to(z).len();
        if xi.len() != count {
            return Err(domain(format!("{count} primes up to {z} but {} phases", xi.len())));
        }
        Ok(PrimePhases { z, xi })
    }

    pub fn distance(&self, gamma: f64) -> f64 {
        primes_up_to(self.z)
            .iter()
            .zip(&self.xi)
            .map(|(&p, xi)| dist_to_int(gamma * (p as f64).ln() / (2.0 * PI) - xi))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HitReport {
    pub n_total: usize,
    pub eps: f64,
    /// 1-based indices `n` of the hitting ordinates.
    pub hits: Vec<usize>,
    pub density: f64,
    pub min_distance: f64,
}

impl HitReport {
    fn from_distances(distances: &[f64], eps: f64) -> Self {
        let hits: Vec<usize> = distances.iter().enumerate().filter(|(_, &d)| d < eps).map(|(i, _)| i + 1).collect();
        HitReport {
            n_total: distances.len(),
            eps,
            density: hits.len() as f64 / distances.len() as f64,
            hits,
            min_distance: distances.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }
}

fn check_search(grid: &ComplexGrid, ordinates: &[f64], eps: f64) -> Result<()> {
    if ordinates.is_empty() {
        return Err(domain("no ordinates to search"));
    }
    if !(eps > 0.0) {
        return Err(domain("eps must be positive"));
    }
    if let Some(z) = grid.nodes().iter().find(|z| !(z.re > 0.5 && z.re < 1.0)) {
        return Err(domain(format!("grid node {z} lies outside 1/2 < σ < 1")));
    }
    Ok(())
}

/// Joint distance `max(max_j sup_K |L(s+iγ; f_j) − g_j|, prime phases)` for
/// every ordinate.
fn joint_distances(
    targets: &[(PeriodicFunction, Vec<C64>)],
    grid: &ComplexGrid,
    ordinates: &[f64],
    phases: Option<&PrimePhases>,
) -> Result<Vec<f64>> {
    for (_, g) in targets {
        if g.len() != grid.nodes().len() {
            return Err(domain("target must have one value per grid node"));
        }
    }
    ordinates
        .par_iter()
        .map(|&gamma| {
            let mut d = phases.map_or(0.0, |p| p.distance(gamma));
            for (f, g) in targets {
                let values = GridEvaluator::new(f, grid).eval(gamma)?;
                d = values.iter().zip(g).map(|(v, t)| (v - t).norm()).fold(d, f64::max);
            }
            Ok(d)
        })
        .collect()
}

/// Counts ordinates `γ^{(n)}` whose shifts approximate every target at once
/// and satisfy the prime-phase constraint.
pub fn shift_search(
    targets: &[(PeriodicFunction, Vec<C64>)],
    grid: &ComplexGrid,
    ordinates: &[f64],
    eps: f64,
    phases: Option<&PrimePhases>,
) -> Result<HitReport> {
    check_search(grid, ordinates, eps)?;
    for (_, g) in targets {
        if g.iter().any(|z| z.norm() == 0.0) {
            return Err(domain("targets must not vanish on the grid"));
        }
    }
    let d = joint_distances(targets, grid, ordinates, phases)?;
    Ok(HitReport::from_distances(&d, eps))
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicHitReport {
    /// `max_K |L(s + iγ; ψ) − h(s)| < ε`.
    pub psi: HitReport,
    /// The auxiliary joint approximation at tolerance `η`.
    pub joint: HitReport,
    pub construction: &'static str,
    pub m_h: Option<f64>,
    pub eta: f64,
}

/// Universality search for a periodic `ψ`. The joint targets come from the
/// character expansion of `ψ`: a single character gets `h/c`; otherwise the
/// first two nonzero coefficients get `(h + M_h)/c_1` and `−M_h/c_2` and the
/// rest get `η`. For period 2 the search runs on `ζ` with target `h/P` and
/// requires `γ log 2 / 2π` near an integer.
pub fn periodic_search(
    psi: &PeriodicFunction,
    h: &[C64],
    grid: &ComplexGrid,
    ordinates: &[f64],
    eps: f64,
    eta: f64,
) -> Result<PeriodicHitReport> {
    check_search(grid, ordinates, eps)?;
    if !(eta > 0.0) {
        return Err(domain("eta must be positive"));
    }
    if h.len() != grid.nodes().len() {
        return Err(domain("target must have one value per grid node"));
    }
    if psi.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let nonvanishing = || {
        if h.iter().any(|z| z.norm() == 0.0) {
            Err(domain("a character multiple needs a nonvanishing target"))
        } else {
            Ok(())
        }
    };
    let mut phases = None;
    let mut m_h = None;
    let (construction, targets): (&'static str, Vec<(PeriodicFunction, Vec<C64>)>) =
        if psi.q() == 2 && psi.at(1) != psi.at(2) {
            let p = r2_factor(psi)?;
            grid.guard_r2(&p)?;
            nonvanishing()?;
            phases = Some(PrimePhases { z: 2, xi: vec![0.0] });
            let g = grid.nodes().iter().zip(h).map(|(&s, &hs)| hs / p.eval(s)).collect();
            ("r2", vec![(PeriodicFunction::one(), g)])
        } else if psi.values().iter().all(|&v| v == psi.at(1)) {
            nonvanishing()?;
            let c = psi.at(1);
            ("character", vec![(PeriodicFunction::one(), h.iter().map(|&hs| hs / c).collect())])
        } else {
            let dec = character_decompose(psi)?;
            let scale = dec.terms.iter().map(|(c, _)| c.norm()).fold(0.0, f64::max);
            let live: Vec<&(C64, DirichletCharacter)> =
                dec.terms.iter().filter(|(c, _)| c.norm() > 1e-12 * scale).collect();
            if live.len() == 1 {
                nonvanishing()?;
                let (c, chi) = live[0];
                ("character", vec![(chi.to_periodic(), h.iter().map(|&hs| hs / c).collect())])
            } else {
                let bound = 1.0 + h.iter().map(|z| z.norm()).fold(0.0, f64::max);
                m_h = Some(bound);
                let targets = live
                    .iter()
                    .enumerate()
                    .map(|(i, (c, chi))| {
                        let g = match i {
                            0 => h.iter().map(|&hs| (hs + bound) / c).collect(),
                            1 => vec![-bound / c; h.len()],
                            _ => vec![C64::new(eta, 0.0); h.len()],
                        };
                        (chi.to_periodic(), g)
                    })
                    .collect();
                ("combination", targets)
            }
        };
    let joint = joint_distances(&targets, grid, ordinates, phases.as_ref())?;
    let direct = joint_distances(&[(psi.clone(), h.to_vec())], grid, ordinates, None)?;
    Ok(PeriodicHitReport {
        psi: HitReport::from_distances(&direct, eps),
        joint: HitReport::from_distances(&joint, eta),
        construction,
        m_h,
        eta,
    })
}

/// `(1/(N+1)) Σ_{N ≤ n ≤ 2N} max_K |L(s + iγ^{(n)}; χ) − L_Q(s + iγ^{(n)}; χ)|²`
/// with `ordinates[n − 1] = γ^{(n)}`. `Q < 2` uses the empty product.
pub fn euler_distance_ms(
    ordinates: &[f64],
    n: usize,
    chi: &DirichletCharacter,
    big_q: f64,
    grid: &ComplexGrid,
) -> Result<f64> {
    if n == 0 || ordinates.len() < 2 * n {
        return Err(domain(format!("window N..2N with N = {n} needs {} ordinates, have {}", 2 * n, ordinates.len())));
    }
    let f = chi.to_periodic();
    let window = &ordinates[n - 1..2 * n];
    let maxima: Vec<f64> = window
        .par_iter()
        .map(|&gamma| {
            let values = GridEvaluator::new(&f, grid).eval(gamma)?;
            grid.nodes().iter().zip(&values).try_fold(0.0f64, |m, (&z, v)| {
                let e = truncated_euler(z + C64::new(0.0, gamma), chi, big_q)?;
                Ok(m.max((v - e).norm_sqr()))
            })
        })
        .collect::<Result<_>>()?;
    Ok(maxima.iter().sum::<f64>() / window.len() as f64)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunction::{eval_l, LEvalStrategy};
    use crate::periodic::character_table;

    fn grid() -> ComplexGrid {
        ComplexGrid::disc(C64::new(0.75, 0.0), 0.05, 5).unwrap()
    }

    fn gram_like(n: usize) -> Vec<f64> {
        (0..n).map(|k| 20.0 + 2.7 * k as f64).collect()
    }

    #[test]
    fn prime_constraint_only() {
        let g = grid();
        let phases = PrimePhases::new(2, vec![0.3]).unwrap();
        let r = shift_search(&[], &g, &gram_like(50), 1.1, Some(&phases)).unwrap();
        assert_eq!(r.density, 1.0);
        assert!(shift_search(&[], &g, &[], 1.1, None).is_err());
    }

    #[test]
    fn self_hit() {
        let g = grid();
        let ords = gram_like(30);
        let one = PeriodicFunction::one();
        let target = GridEvaluator::new(&one, &g).eval(ords[7]).unwrap();
        let r = shift_search(&[(one, target)], &g, &ords, 1e-9, None).unwrap();
        assert_eq!(r.hits, vec![8]);
        assert_eq!(r.min_distance, 0.0);
    }

    #[test]
    fn combination_targets_recombine() {
        // ψ mod 5 that is not a character multiple
        let psi = PeriodicFunction::from_real(5, &[1.0, 0.5, -0.25, 2.0, 0.0]).unwrap();
        let g = grid();
        let h = vec![C64::new(1.0, 0.0); g.nodes().len()];
        let ords = gram_like(20);
        let r = periodic_search(&psi, &h, &g, &ords, 0.5, 0.1).unwrap();
        assert_eq!(r.construction, "combination");
        assert_eq!(r.m_h, Some(2.0));
        let dec = character_decompose(&psi).unwrap();
        let st = LEvalStrategy::default();
        let s = C64::new(0.77, 31.0);
        let via: C64 = dec.terms.iter().map(|(c, chi)| c * eval_l(s, &chi.to_periodic(), &st).unwrap()).sum();
        assert!((via - eval_l(s, &psi, &st).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn r2_path() {
        let psi = PeriodicFunction::from_real(2, &[1.0, 3.0]).unwrap();
        let g = grid();
        let h = vec![C64::new(1.0, 0.0); g.nodes().len()];
        let r = periodic_search(&psi, &h, &g, &gram_like(10), 0.5, 0.5).unwrap();
        assert_eq!(r.construction, "r2");
        let bad = PeriodicFunction::from_real(2, &[1.0, 1.0 - 2f64.powf(0.75)]).unwrap();
        assert!(periodic_search(&bad, &h, &g, &gram_like(10), 0.5, 0.5).is_err());
    }

    #[test]
    fn euler_empty_product() {
        let g = grid();
        let ords = gram_like(8);
        let one = &character_table(1).unwrap()[0];
        let got = euler_distance_ms(&ords, 3, one, 1.0, &g).unwrap();
        let f = PeriodicFunction::one();
        let want: f64 = ords[2..6]
            .iter()
            .map(|&t| {
                let v = GridEvaluator::new(&f, &g).eval(t).unwrap();
                v.iter().map(|z| (z - 1.0).norm_sqr()).fold(0.0, f64::max)
            })
            .sum::<f64>()
            / 4.0;
        assert_eq!(got, want);
        assert!(euler_distance_ms(&ords, 5, one, 1.0, &g).is_err());
    }

    #[test]
    fn euler_converges_at_sigma_two() {
        let g = ComplexGrid::disc_anywhere(C64::new(2.0, 0.0), 0.05, 5).unwrap();
        let chi4 = &character_table(4).unwrap()[1];
        let ords = gram_like(20);
        let ms = euler_distance_ms(&ords, 10, chi4, 1e4, &g).unwrap();
        assert!(ms <= 1e-4, "{ms}");
    }
}
