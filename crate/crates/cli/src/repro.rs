//! One function per acceptance row. Each returns a [`Verdict`] whose
//! `detail` carries the underlying reports.

use crate::family::{first_points, points_up_to, Family};
use crate::selftest;
use crate::CliResult;
use lperiodic::apoints::{calibrate, enumerate};
use lperiodic::delta::predicted_beta;
use lperiodic::periodic::PeriodicFunction;
use lperiodic::specfun::EulerMaclaurinConfig;
use lperiodic::stats::{counting_report, duality_gap, mean_value_sum, power_sum, star_discrepancy, weyl_criterion_report, weyl_sum_unimodular};
use lperiodic::universality::{periodic_search, sup_distance, ComplexGrid, GridEvaluator};
use lperiodic::C64;
use serde::Serialize;
use serde_json::{json, Value};
use std::f64::consts::{E, PI, SQRT_2};
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub detail: Value,
}

pub const COUNT_HEIGHTS: [f64; 4] = [200.0, 500.0, 1000.0, 2000.0];
pub const POWER_HEIGHTS: [f64; 3] = [200.0, 500.0, 1000.0];
pub const POWER_BASES: [f64; 4] = [2.0, 5.0, 1.0 / 3.0, E];

pub fn count_families() -> Vec<Family> {
    vec![
        Family::new(1, 1, C64::new(1.0, 0.0)),
        Family::new(1, 1, C64::new(0.0, 2.0)),
        Family::new(3, -1, C64::new(1.0, 0.0)),
        Family::new(4, -1, C64::from_polar(0.5, PI / 3.0)),
        Family::new(5, 1, C64::new(-1.0, 0.0)),
    ]
}

fn zeta_ones() -> Family {
    Family::new(1, 1, C64::new(1.0, 0.0))
}

/// `θ(t)` from its Stirling expansion, accurate to about `t^{−9}`.
pub fn theta_stirling(t: f64) -> f64 {
    let (t2, t3) = (t * t, t * t * t);
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t3)
        + 31.0 / (80640.0 * t3 * t2)
        + 127.0 / (430080.0 * t3 * t2 * t2)
}

/// The Gram point `g_n` solving `θ(t) = nπ`, by bisection on `[10, 10^6]`
/// where `θ` is increasing.
pub fn gram_point(n: i64) -> f64 {
    let target = n as f64 * PI;
    let (mut lo, mut hi) = (10.0f64, 1e6f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if theta_stirling(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn gram_oracle() -> CliResult<Verdict> {
    let start = Instant::now();
    let set = first_points(&zeta_ones(), 100, None)?;
    let pts = &set.points[..100];
    let offset = (theta_stirling(pts[0].gamma) / PI).round() as i64;
    let worst = pts
        .iter()
        .enumerate()
        .map(|(k, p)| (p.gamma - gram_point(offset + k as i64)).abs())
        .fold(0.0, f64::max);
    let seconds = start.elapsed().as_secs_f64();
    let passed = worst <= 1e-8 && seconds < 10.0;
    Ok(Verdict {
        criterion: 1,
        name: "gram_oracle",
        passed,
        summary: format!("first 100 ordinates vs Gram points from g_{offset}: max error {worst:.2e}, {seconds:.2}s"),
        detail: json!({ "first_gram_index": offset, "max_error": worst, "seconds": seconds }),
    })
}

pub fn theorem1(families: &[Family], heights: &[f64]) -> CliResult<Verdict> {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut passed = true;
    let mut worst: f64 = 0.0;
    for fam in families {
        let p = fam.params()?;
        let cfg = calibrate(&p, fam.a)?;
        for &t in heights {
            let e = enumerate(&p, fam.a, cfg.t_a, t, &cfg)?;
            let report = counting_report(&e.set, t)?;
            let exact = e.certificate.count == report.computed as i64;
            passed &= report.within_bound && exact;
            worst = worst.max(report.normalized.abs());
            rows.push(json!({
                "family": fam.label(),
                "t_a": cfg.t_a,
                "report": report,
                "contour_count": e.certificate.count,
                "quadrature_residual": e.certificate.quadrature_residual,
                "exact": exact,
            }));
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    passed &= seconds < 300.0;
    Ok(Verdict {
        criterion: 2,
        name: "theorem1_counting",
        passed,
        summary: format!("{} cells, max |N - main|/log(qT) = {worst:.3} (bound 5), {seconds:.1}s", rows.len()),
        detail: json!({ "rows": rows, "seconds": seconds }),
    })
}

pub fn theorem2(t: f64) -> CliResult<Verdict> {
    let one = PeriodicFunction::one();
    let cfg = EulerMaclaurinConfig::default();
    let plus = points_up_to(&zeta_ones(), t, None)?;
    let minus = points_up_to(&Family::new(1, 1, C64::new(-1.0, 0.0)), t, None)?;
    let rp = mean_value_sum(&plus, &one, t, &cfg)?;
    let rm = mean_value_sum(&minus, &one, t, &cfg)?;
    let rel = rp.rel_deviation.unwrap_or(f64::INFINITY);
    let envelope = 20.0 * t.powf(0.6);
    let stable = rp.cutoff_sensitivity <= 1e-6 && rm.cutoff_sensitivity <= 1e-6;
    let passed = rel <= 0.15 && rm.sum.norm() <= envelope && stable;
    Ok(Verdict {
        criterion: 3,
        name: "theorem2_mean_value",
        passed,
        summary: format!(
            "a=1: relative deviation {rel:.4} (<= 0.15); a=-1: |sum| = {:.2} (<= {envelope:.1}); cutoff sensitivity {:.1e}",
            rm.sum.norm(),
            rp.cutoff_sensitivity.max(rm.cutoff_sensitivity)
        ),
        detail: json!({ "a_plus_one": rp, "a_minus_one": rm }),
    })
}

pub fn theorem3(heights: &[f64], bases: &[f64]) -> CliResult<Verdict> {
    let t_max = 2.0 * heights.iter().copied().fold(0.0, f64::max);
    let set = points_up_to(&zeta_ones(), t_max, None)?;
    let mut cells = Vec::new();
    let mut c_fit: f64 = 0.0;
    for &t in heights {
        for &x in bases {
            let r = power_sum(&set, x, t, 2.0 * t)?;
            if r.budget.reduced_bound.is_some() {
                c_fit = c_fit.max(r.c_fit);
            }
            cells.push(r);
        }
    }
    let a = C64::new(0.0, 2.0);
    let one = points_up_to(&Family::new(1, 1, a), t_max, None)?;
    let two = points_up_to(&Family::new(1, 1, 1.0 / a.conj()), t_max, None)?;
    let mut gap: f64 = 0.0;
    for &t in heights {
        for &x in bases {
            let s1 = power_sum(&one, x, t, 2.0 * t)?.sum;
            let s2 = power_sum(&two, 1.0 / x, t, 2.0 * t)?.sum;
            gap = gap.max(duality_gap(s1, s2, x));
        }
    }
    Ok(Verdict {
        criterion: 4,
        name: "theorem3_power_sums",
        passed: c_fit <= 10.0 && gap <= 1e-8,
        summary: format!("C_fit = {c_fit:.3} (<= 10) over {} cells; duality gap {gap:.1e} (<= 1e-8)", cells.len()),
        detail: json!({ "cells": cells, "c_fit": c_fit, "duality_gap": gap }),
    })
}

pub fn theorem4(n: usize) -> CliResult<Verdict> {
    let set = first_points(&zeta_ones(), n, None)?;
    let ords: Vec<f64> = set.points[..n].iter().map(|p| p.gamma).collect();
    let mut passed = true;
    let mut discrepancies = Vec::new();
    for alpha in [1.0, SQRT_2, 1.0 / PI] {
        let scaled: Vec<f64> = ords.iter().map(|g| alpha * g).collect();
        let d = star_discrepancy(&scaled)?;
        passed &= d <= 0.05;
        discrepancies.push(json!({
            "alpha": alpha,
            "star_discrepancy": d,
            "weyl": weyl_criterion_report(&ords, alpha, 10)?,
        }));
    }
    let half = n / 2;
    let mut weyl = Vec::new();
    let mut c_fit: f64 = 0.0;
    for x in POWER_BASES {
        let r = weyl_sum_unimodular(&ords, 1, half, x)?;
        c_fit = c_fit.max(r.c_fit);
        weyl.push(r);
    }
    passed &= c_fit <= 10.0;
    let worst = discrepancies.iter().map(|d| d["star_discrepancy"].as_f64().unwrap_or(1.0)).fold(0.0, f64::max);
    Ok(Verdict {
        criterion: 5,
        name: "theorem4_equidistribution",
        passed,
        summary: format!("N = {n}: max D* = {worst:.4} (<= 0.05); Weyl-sum C_fit = {c_fit:.3} (<= 10) at N = {half}"),
        detail: json!({ "discrepancy": discrepancies, "weyl_sums": weyl }),
    })
}

pub fn theorem5(n: usize) -> CliResult<Verdict> {
    let set = first_points(&zeta_ones(), n, None)?;
    let ords: Vec<f64> = set.points[..n].iter().map(|p| p.gamma).collect();
    let grid = ComplexGrid::disc(C64::new(0.75, 0.0), 0.05, 9)?;
    let h = vec![C64::new(1.0, 0.0); grid.nodes().len()];
    let one = PeriodicFunction::one();
    let search = periodic_search(&one, &h, &grid, &ords, 0.5, 0.5)?;
    let mut self_worst: f64 = 0.0;
    for &g in &ords {
        let target = GridEvaluator::new(&one, &grid).eval(g)?;
        self_worst = self_worst.max(sup_distance(g, &one, &target, &grid)?);
    }
    let passed = !search.psi.hits.is_empty() && self_worst < 1e-6;
    Ok(Verdict {
        criterion: 6,
        name: "theorem5_universality",
        passed,
        summary: format!(
            "N = {n}, eps = 0.5: {} hits (first n = {}), best distance {:.4}; self-approximation max {self_worst:.1e}",
            search.psi.hits.len(),
            search.psi.hits.first().map_or("none".into(), |k| k.to_string()),
            search.psi.min_distance
        ),
        detail: json!({ "search": search, "self_max_distance": self_worst }),
    })
}

pub fn identities() -> CliResult<Verdict> {
    let suites = selftest::run_all()?;
    let failed: Vec<&str> = suites.iter().filter(|s| !s.passed).map(|s| s.name).collect();
    Ok(Verdict {
        criterion: 7,
        name: "identity_suites",
        passed: failed.is_empty(),
        summary: if failed.is_empty() {
            format!("{} suites x {} samples all within tolerance", suites.len(), selftest::SAMPLES)
        } else {
            format!("failing suites: {}", failed.join(", "))
        },
        detail: json!({ "suites": suites }),
    })
}

pub fn real_part_law() -> CliResult<Verdict> {
    let t = 2000.0;
    let mut law: f64 = 0.0;
    let mut checked = 0;
    for fam in count_families().into_iter().filter(|f| f.a.norm() != 1.0) {
        let set = points_up_to(&fam, t, None)?;
        let p = fam.params()?;
        for pt in set.points.iter().filter(|pt| pt.gamma >= 500.0) {
            law = law.max((pt.beta - predicted_beta(pt.gamma, fam.a, &p)?).abs());
            checked += 1;
        }
    }
    let mut line: f64 = 0.0;
    let mut on_line = 0;
    for a in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0)] {
        let set = points_up_to(&Family::new(1, 1, a), t, None)?;
        line = set.points.iter().map(|pt| (pt.beta - 0.5).abs()).fold(line, f64::max);
        on_line += set.points.len();
    }
    Ok(Verdict {
        criterion: 8,
        name: "real_part_law",
        passed: law <= 1e-3 && line <= 1e-8,
        summary: format!(
            "|beta - predicted| max {law:.2e} over {checked} points (<= 1e-3); |beta - 1/2| max {line:.1e} over {on_line} unimodular points (<= 1e-8)"
        ),
        detail: json!({ "law_max": law, "law_points": checked, "line_max": line, "line_points": on_line }),
    })
}

/// Enumerates and certifies the first 10⁴ points of `ζ(s) = 1`'s factor.
pub fn performance() -> CliResult<Verdict> {
    let fam = zeta_ones();
    let p = fam.params()?;
    let start = Instant::now();
    let cfg = calibrate(&p, fam.a)?;
    let e = enumerate(&p, fam.a, cfg.t_a, 9900.0, &cfg)?;
    let seconds = start.elapsed().as_secs_f64();
    let count = e.set.points.len();
    let certified = e.certificate.count == count as i64;
    Ok(Verdict {
        criterion: 9,
        name: "performance",
        passed: count >= 10_000 && certified && seconds < 60.0,
        summary: format!("{count} points certified on ({:.3}, 9900] in {seconds:.2}s on {} threads", cfg.t_a, rayon::current_num_threads()),
        detail: json!({ "count": count, "seconds": seconds, "repair_rounds": e.repair_rounds }),
    })
}
