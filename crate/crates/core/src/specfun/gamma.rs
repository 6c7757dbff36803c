//! `log Γ` and the digamma function on the complex plane.

use super::bernoulli::bernoulli_2k;
use crate::{Error, Result, C64};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn lanczos_log_gamma(z: C64) -> C64 {
    let z = z - 1.0;
    let x = LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(C64::new(LANCZOS[0], 0.0), |acc, (i, &c)| acc + c / (z + (i + 1) as f64));
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Principal branch of `log Γ(z)`: real on the positive axis and continuous
/// on `ℂ` minus `(−∞, 0]`.
pub fn log_gamma(z: C64) -> Result<C64> {
    if is_pole(z) {
        return Err(Error::Pole(z));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_log_gamma(z));
    }
    // log Γ(z) = log Γ(z+n) − Σ log(z+k); every log here is principal, and
    // the sum of their cuts is exactly the cut of log Γ.
    let n = (0.5 - z.re).ceil() as usize;
    let shift: C64 = (0..n).map(|k| (z + k as f64).ln()).sum();
    Ok(lanczos_log_gamma(z + n as f64) - shift)
}

pub fn gamma(z: C64) -> Result<C64> {
    log_gamma(z).map(C64::exp)
}

/// `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: C64) -> Result<C64> {
    if is_pole(z) {
        return Err(Error::Pole(z));
    }
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < 0.5 || w.norm() < 15.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut pow = inv2;
    let mut series = w.ln() - 0.5 / w;
    for k in 1..=10 {
        series -= bernoulli_2k(k) / (2 * k) as f64 * pow;
        pow *= inv2;
    }
    Ok(acc + series)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Independent Stirling series with upward shift; used only as an oracle.
    pub(crate) fn stirling_log_gamma(z: C64) -> C64 {
        let mut w = z;
        let mut shift = C64::new(0.0, 0.0);
        while w.norm() < 30.0 || w.re < 1.0 {
            shift += w.ln();
            w += 1.0;
        }
        let mut s = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
        let mut pow = w;
        for k in 1..=12 {
            s += bernoulli_2k(k) / ((2 * k) * (2 * k - 1)) as f64 / pow;
            pow *= w * w;
        }
        s - shift
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn exact_values() {
        assert!((log_gamma(c(5.0, 0.0)).unwrap() - c(24f64.ln(), 0.0)).norm() < 1e-14);
        assert!((log_gamma(c(0.5, 0.0)).unwrap() - c(0.5 * PI.ln(), 0.0)).norm() < 1e-14);
        // mpmath, 30 digits
        let want = c(0.498015668118356042713691117462, -0.154949828301810685124955130484);
        let got = gamma(c(1.0, 1.0)).unwrap();
        assert!((got - want).norm() / want.norm() < 1e-13);
        assert!(log_gamma(c(0.0, 0.0)).is_err());
        assert!(log_gamma(c(-3.0, 0.0)).is_err());
        assert!(digamma(c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn agrees_with_stirling_including_branch() {
        let pts = [
            c(0.5, 17.8), c(0.25, 1000.0), c(-3.7, 12.0), c(-20.5, -3.0), c(0.9, -5000.0),
            c(3.0, 0.1), c(-0.3, 0.0), c(2.5, 9999.0), c(-1.5, 200.0),
        ];
        for z in pts {
            let got = log_gamma(z).unwrap();
            let want = stirling_log_gamma(z);
            let tol = 1e-13 * (1.0 + want.norm());
            assert!((got - want).norm() < tol, "z = {z}: {got} vs {want}");
        }
    }

    #[test]
    fn principal_branch_values() {
        // mpmath.loggamma
        let cases = [
            (c(-3.7, 12.0), c(-28.4489120087188320608634374494, 10.5039449497884141235785016892)),
            (c(-20.5, -3.0), c(-51.2253036766033973194735079977, 56.829458531801580889496659433)),
            (c(0.25, 1000.0), c(-1571.60432707362497953185110997, 5907.36259031710514647556743579)),
        ];
        for (z, want) in cases {
            let got = log_gamma(z).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm(), "{z}: {got}");
        }
        // continuous along a horizontal line above the cut
        let mut prev = log_gamma(c(-10.0, 0.5)).unwrap();
        for i in 1..=2000 {
            let z = c(-10.0 + i as f64 * 0.01, 0.5);
            let cur = log_gamma(z).unwrap();
            assert!((cur - prev).norm() < 0.05, "jump at {z}");
            prev = cur;
        }
    }

    #[test]
    fn digamma_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap() + euler).norm() < 1e-14);
        assert!((digamma(c(2.0, 0.0)).unwrap() - c(1.0 - euler, 0.0)).norm() < 1e-14);
        let s = c(3.0, 2.0);
        let h = 1e-5;
        let fd = (log_gamma(s + h).unwrap() - log_gamma(s - h).unwrap()) / (2.0 * h);
        assert!((fd - digamma(s).unwrap()).norm() < 1e-8);
        for z in [c(0.3, 0.2), c(-4.5, 1.0), c(7.0, -30.0)] {
            let lhs = digamma(z + 1.0).unwrap();
            let rhs = digamma(z).unwrap() + 1.0 / z;
            assert!((lhs - rhs).norm() < 1e-12, "{z}");
        }
    }
}
