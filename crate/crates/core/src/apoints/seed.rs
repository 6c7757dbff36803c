use crate::delta::{phase_unchecked, DeltaParams};
use crate::{error::domain, Result, C64};
use std::f64::consts::PI;

/// Principal argument in `(−π, π]`.
pub(crate) fn principal_arg(a: C64) -> f64 {
    let phi = a.arg();
    if phi == -PI {
        PI
    } else {
        phi
    }
}

/// Solves `Φ(t) = y` on `[lo, hi]` where `Φ(lo) ≥ y ≥ Φ(hi)`.
pub(crate) fn invert_phase(p: &DeltaParams, y: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let ph = phase_unchecked(t, p);
        let r = ph.phase - y;
        if r.abs() <= 1e-13 * y.abs().max(1.0) {
            break;
        }
        if r > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let next = t - r / ph.derivative;
        t = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    t
}

/// Every `(k, t)` with `t ∈ [t1, t2]` and `Φ(t) = target − 2πk`, by
/// increasing `t`.
pub(crate) fn phase_cells(p: &DeltaParams, target: f64, t1: f64, t2: f64) -> Result<Vec<(i64, f64)>> {
    if !(t1 > p.monotone_threshold()) {
        return Err(domain(format!(
            "seeding needs T1 > 2π/q = {}, got {t1}",
            p.monotone_threshold()
        )));
    }
    if !(t2 >= t1) {
        return Err(domain(format!("empty interval [{t1}, {t2}]")));
    }
    let top = phase_unchecked(t1, p).phase;
    let bottom = phase_unchecked(t2, p).phase;
    let k_lo = ((target - top) / (2.0 * PI)).ceil() as i64;
    let k_hi = ((target - bottom) / (2.0 * PI)).floor() as i64;
    Ok((k_lo..=k_hi)
        .map(|k| (k, invert_phase(p, target - 2.0 * PI * k as f64, t1, t2)))
        .collect())
}

/// Heights on `[T1, T2]` where the asymptotic phase of `Δ(1/2+it)` equals
/// `arg a` modulo `2π`.
pub fn seed_ordinates(p: &DeltaParams, a: C64, t1: f64, t2: f64) -> Result<Vec<f64>> {
    if a == C64::new(0.0, 0.0) {
        return Err(domain("a must be nonzero"));
    }
    Ok(phase_cells(p, principal_arg(a), t1, t2)?.into_iter().map(|(_, t)| t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_seeds() {
        let p = DeltaParams::new(1, 1).unwrap();
        let seeds = seed_ordinates(&p, C64::new(1.0, 0.0), 10.0, 30.0).unwrap();
        let gram = [17.845_599_540_410_86, 23.170_282_701_246_31, 27.670_182_217_816_34];
        assert_eq!(seeds.len(), 3);
        for (s, g) in seeds.iter().zip(gram) {
            // the asymptotic phase is off by about 1/(24 t) / log(t/2π)
            assert!((s - g).abs() < 0.01, "{s} vs {g}");
        }
    }

    #[test]
    fn counts_and_edges() {
        let p = DeltaParams::new(1, 1).unwrap();
        let t = 1000.0;
        let main = |t: f64| t / (2.0 * PI) * (t / (2.0 * PI * std::f64::consts::E)).ln();
        let n = seed_ordinates(&p, C64::new(0.0, 2.0), t, 2.0 * t).unwrap().len() as f64;
        assert!((n - (main(2.0 * t) - main(t))).abs() <= 1.0);
        let pair = seed_ordinates(&p, C64::new(1.0, 0.0), 1000.0, 1002.0).unwrap();
        let gap = seed_ordinates(&p, C64::new(1.0, 0.0), pair[0] + 0.1, pair[1] - 0.1).unwrap();
        assert!(gap.is_empty());
        assert!(seed_ordinates(&p, C64::new(1.0, 0.0), 5.0, 30.0).is_err());
        let seeds = seed_ordinates(&p, C64::new(-1.0, 0.0), 100.0, 110.0).unwrap();
        for s in seeds {
            let ph = phase_unchecked(s, &p).phase;
            let r = (ph - PI) / (2.0 * PI);
            assert!((r - r.round()).abs() < 1e-12);
        }
    }
}
