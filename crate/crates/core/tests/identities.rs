use lperiodic::delta::{delta, DeltaParams};
use lperiodic::lfunction::{eval_l, eval_l_afe, eval_l_hurwitz, eval_l_series, functional_eq_residual, AfeParams, LEvalStrategy};
use lperiodic::periodic::{character_table, Parity, PeriodicFunction};
use lperiodic::specfun::{digamma, hurwitz_zeta, log_gamma, EulerMaclaurinConfig};
use lperiodic::C64;
use proptest::prelude::*;

fn values(q: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b)), q)
}

fn any_function() -> impl Strategy<Value = PeriodicFunction> {
    (1usize..=12).prop_flat_map(values).prop_map(|v| PeriodicFunction::new(v.len(), v).unwrap())
}

/// Even or odd part of a random function, skipping those that vanish.
fn parity_function() -> impl Strategy<Value = PeriodicFunction> {
    (any_function(), any::<bool>()).prop_filter_map("zero part", |(f, odd)| {
        let q = f.q() as i64;
        let sign = if odd { -1.0 } else { 1.0 };
        let v: Vec<C64> = (1..=q).map(|n| 0.5 * (f.at(n) + sign * f.at(-n))).collect();
        let g = PeriodicFunction::new(q as usize, v).unwrap();
        (!g.is_zero()).then_some(g)
    })
}

fn close(a: &PeriodicFunction, b: &PeriodicFunction, tol: f64) -> bool {
    a.values().iter().zip(b.values()).all(|(x, y)| (x - y).norm() < tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fourier_inversion(f in any_function()) {
        let back = f.dft(1).dft(-1);
        prop_assert!(close(&back, &f, 1e-12));
        let q = f.q() as i64;
        let reflected = PeriodicFunction::new(f.q(), (1..=q).map(|n| f.at(-n)).collect()).unwrap();
        prop_assert!(close(&f.dft(1).dft(1), &reflected, 1e-12));
        let e: f64 = f.values().iter().map(|z| z.norm_sqr()).sum();
        let e_hat: f64 = f.dft(1).values().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((e - e_hat).abs() < 1e-12 * (1.0 + e));
    }

    #[test]
    fn parity_of_dual(f in parity_function()) {
        let d = f.delta_sign().unwrap();
        prop_assert_ne!(f.parity(), Parity::Neither);
        prop_assert!(close(&f.dft(1).dft(1), &f.scale(C64::new(d as f64, 0.0)), 1e-12));
    }

    #[test]
    fn delta_identity_and_reflection(q in 1usize..=30, odd in any::<bool>(), sigma in -3.0..4.0f64, t in 1.0..500.0f64) {
        let p = DeltaParams::new(q, if odd { -1 } else { 1 }).unwrap();
        let s = C64::new(sigma, t);
        let prod = delta(s, &p).unwrap() * delta(1.0 - s, &p).unwrap();
        prop_assert!((prod - p.delta() as f64).norm() < 1e-10, "{}", prod);
        let down = delta(s.conj(), &p).unwrap();
        let want = p.delta() as f64 * delta(s, &p).unwrap().conj();
        prop_assert!((down - want).norm() <= 1e-12 * (1.0 + want.norm()));
    }

    #[test]
    fn functional_equation(f in parity_function(), sigma in 0.01..0.99f64, t in -100.0..100.0f64) {
        prop_assume!(t.abs() > 0.5);
        let r = functional_eq_residual(C64::new(sigma, t), &f).unwrap();
        prop_assert!(r <= 1e-8, "residual {}", r);
    }

    #[test]
    fn conjugation(f in any_function(), sigma in -1.0..3.0f64, t in -60.0..60.0f64) {
        prop_assume!(t.abs() > 0.5);
        let st = LEvalStrategy::default();
        let s = C64::new(sigma, t);
        let lhs = eval_l(s.conj(), &f.conj(), &st).unwrap();
        let rhs = eval_l(s, &f, &st).unwrap().conj();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn digamma_finite_difference(re in 0.1..30.0f64, im in -40.0..40.0f64) {
        let z = C64::new(re, im);
        let h = 1e-5;
        let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
        prop_assert!((digamma(z).unwrap() - fd).norm() <= 1e-7 * (1.0 + fd.norm()));
    }

    #[test]
    fn hurwitz_duplication(alpha in 0.05..1.0f64, sigma in -2.0..3.0f64, t in -50.0..50.0f64) {
        prop_assume!(t.abs() > 0.5);
        let cfg = EulerMaclaurinConfig::default();
        let s = C64::new(sigma, t);
        let lhs = hurwitz_zeta(s, alpha, &cfg).unwrap() * C64::new(2.0, 0.0).powc(s);
        let rhs = hurwitz_zeta(s, alpha / 2.0, &cfg).unwrap() + hurwitz_zeta(s, (alpha + 1.0) / 2.0, &cfg).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn method_agreement(f in any_function(), sigma in 1.5..3.0f64, t in -200.0..200.0f64) {
        let s = C64::new(sigma, t);
        let a = eval_l_series(s, &f, 1e-13).unwrap();
        let b = eval_l_hurwitz(s, &f, &EulerMaclaurinConfig::default()).unwrap();
        prop_assert!((a - b).norm() <= 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn afe_within_estimate(r in prop::sample::select(vec![1usize, 3, 4, 5, 7, 8]), k in 0usize..8, sigma in 0.05..0.95f64, t in 20.0..400.0f64) {
        let table = character_table(r).unwrap();
        let chi = &table[k % table.len()];
        let s = C64::new(sigma, t);
        let afe = eval_l_afe(s, chi, &AfeParams::balanced(r, t).unwrap()).unwrap();
        let direct = eval_l(s, &chi.to_periodic(), &LEvalStrategy::default()).unwrap();
        prop_assert!((afe.value - direct).norm() <= 5.0 * afe.error_estimate);
    }
}
