use lperiodic::apoints::{cache_load, cache_store, calibrate, count_argument_principle, enumerate, APointConfig, Rect};
use lperiodic::delta::{delta, predicted_beta, DeltaParams};
use lperiodic::stats::{duality_gap, power_sum};
use lperiodic::{Error, C64};
use std::f64::consts::PI;
use std::io::Write;

fn family(q: usize, d: i8, a: C64) -> (DeltaParams, C64, APointConfig) {
    let p = DeltaParams::new(q, d).unwrap();
    let cfg = calibrate(&p, a).unwrap();
    (p, a, cfg)
}

#[test]
fn points_solve_and_follow_real_part_law() {
    let a = C64::from_polar(0.5, PI / 3.0);
    let (p, a, cfg) = family(4, -1, a);
    let e = enumerate(&p, a, 500.0, 560.0, &cfg).unwrap();
    assert!(!e.set.points.is_empty());
    for pt in &e.set.points {
        assert!((delta(pt.s(), &p).unwrap() - a).norm() < 1e-9);
        let pred = predicted_beta(pt.gamma, a, &p).unwrap();
        assert!((pt.beta - pred).abs() < 1e-3, "{} vs {pred}", pt.beta);
    }
    let rect = Rect::strip(e.set.lower, e.set.upper);
    assert_eq!(count_argument_principle(&p, a, rect).unwrap().count, e.set.points.len() as i64);
}

#[test]
fn unimodular_points_on_critical_line() {
    let (p, a, cfg) = family(1, 1, C64::new(0.0, 1.0));
    let e = enumerate(&p, a, cfg.t_a, 300.0, &cfg).unwrap();
    assert!(e.set.points.iter().all(|pt| (pt.beta - 0.5).abs() < 1e-8));
}

#[test]
fn indices_are_consecutive_across_windows() {
    let (p, a, cfg) = family(5, 1, C64::new(-1.0, 0.0));
    let whole = enumerate(&p, a, cfg.t_a, 200.0, &cfg).unwrap();
    let high = enumerate(&p, a, 120.0, 200.0, &cfg).unwrap();
    let tail = whole.set.window(120.0, 200.0);
    assert_eq!(tail.len(), high.set.points.len());
    for (x, y) in tail.iter().zip(&high.set.points) {
        assert_eq!(x.n, y.n);
        assert!((x.gamma - y.gamma).abs() < 1e-9);
    }
}

#[test]
fn local_density_is_logarithmic() {
    let (p, a, cfg) = family(1, 1, C64::new(1.0, 0.0));
    let e = enumerate(&p, a, cfg.t_a, 2000.0, &cfg).unwrap();
    let bound = 2.0 + (2000.0f64).ln();
    let mut t = 100.0;
    while t < 1999.0 {
        assert!((e.set.window(t, t + 1.0).len() as f64) <= bound);
        t += 0.5;
    }
}

#[test]
fn power_sum_duality() {
    let a = C64::new(1.5, 0.7);
    let dual_a = 1.0 / a.conj();
    let (p, _, cfg) = family(3, -1, a);
    let cfg_dual = calibrate(&p, dual_a).unwrap();
    let t_a = cfg.t_a.max(cfg_dual.t_a);
    let one = enumerate(&p, a, t_a, 800.0, &APointConfig::with_cutoff(t_a)).unwrap();
    let two = enumerate(&p, dual_a, t_a, 800.0, &APointConfig::with_cutoff(t_a)).unwrap();
    for x in [2.0, 1.0 / 3.0, 5.0] {
        let s1 = power_sum(&one.set, x, 400.0, 800.0).unwrap().sum;
        let s2 = power_sum(&two.set, 1.0 / x, 400.0, 800.0).unwrap().sum;
        assert!(duality_gap(s1, s2, x) < 1e-8);
    }
}

#[test]
fn cache_round_trip() {
    let (p, a, cfg) = family(1, 1, C64::new(1.0, 0.0));
    let e = enumerate(&p, a, cfg.t_a, 1500.0, &cfg).unwrap();
    assert!(e.set.points.len() >= 1000);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");

    cache_store(&path, &e.set).unwrap();
    cache_store(&path, &e.set).unwrap();
    let back = cache_load(&path, Some((&p, a))).unwrap().unwrap();
    assert_eq!(back, e.set);

    let grown = dir.path().join("grown.jsonl");
    let first = enumerate(&p, a, cfg.t_a, 600.0, &cfg).unwrap();
    cache_store(&grown, &first.set).unwrap();
    cache_store(&grown, &e.set).unwrap();
    let back = cache_load(&grown, None).unwrap().unwrap();
    assert_eq!((back.lower, back.upper), (e.set.lower, e.set.upper));
    assert_eq!(back.points.len(), e.set.points.len());
    for (x, y) in back.points.iter().zip(&e.set.points) {
        assert_eq!(x.n, y.n);
        assert!((x.gamma - y.gamma).abs() < 1e-10);
    }

    let other = DeltaParams::new(3, -1).unwrap();
    assert!(matches!(cache_load(&path, Some((&other, a))), Err(Error::CacheMismatch(_))));

    let empty = dir.path().join("empty.jsonl");
    std::fs::File::create(&empty).unwrap();
    assert_eq!(cache_load(&empty, None).unwrap(), None);

    let bad = dir.path().join("bad.jsonl");
    let mut f = std::fs::File::create(&bad).unwrap();
    writeln!(f, "{}", std::fs::read_to_string(&path).unwrap().lines().next().unwrap()).unwrap();
    writeln!(f, "{{\"n\": 1, \"beta\": 0.5}}").unwrap();
    assert!(matches!(cache_load(&bad, None), Err(Error::Cache { line: 2, .. })));
}
