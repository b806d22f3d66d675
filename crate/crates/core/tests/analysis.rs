use rand::Rng;
use rayon::prelude::*;

use ruinlab::analysis::{
    ks_distance, normal_cdf, verify_clt, verify_clt_proportional, verify_clt_simple, verify_eulerian, verify_fluid,
    verify_winner_degenerate, CltSetup, ConvergenceReport, EmpiricalCDF, Verdict,
};
use ruinlab::simulate::replication_rng;
use ruinlab::{SimConfig, TableKind};

#[test]
fn uniform_ks_below_kolmogorov_quantile() {
    let seeds = 1000u64;
    let n = 10_000;
    let bound = 1.63 / (n as f64).sqrt();
    let over = (0..seeds)
        .into_par_iter()
        .filter(|&s| {
            let mut rng = replication_rng(900, s);
            let sample: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let e = EmpiricalCDF::new(sample).unwrap();
            ks_distance(&e, |x| x.clamp(0.0, 1.0)).unwrap() > bound
        })
        .count();
    // 1% exceedance rate plus three binomial standard deviations
    assert!(over <= 19, "{over} of {seeds} seeds above the 99% quantile");
}

#[test]
fn ks_against_exact_cdfs_is_a_distance() {
    let mut rng = replication_rng(901, 0);
    for size in [2usize, 10, 500] {
        let sample: Vec<f64> = (0..size).map(|_| 4.0 * rng.random::<f64>() - 2.0).collect();
        let e = EmpiricalCDF::new(sample).unwrap();
        let d = e.ks_distance(|x| normal_cdf(x, 0.0, 1.0));
        assert!((0.0..=1.0).contains(&d));
    }
}

#[test]
fn clt_experiments_share_one_code_path() {
    let ladder = [100, 400, 1600];
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let p = verify_clt(CltSetup::proportional(), &ladder, &grid).unwrap();
    let q = verify_clt(CltSetup::simple(), &ladder, &grid).unwrap();
    assert_eq!(p.ladder.len(), q.ladder.len());
    assert_eq!(p.series(), q.series());
    assert_eq!(p.plot.len(), q.plot.len());
    assert_eq!(p.checks.len(), q.checks.len());
    assert_eq!(p.trend, q.trend);
    for (a, b) in p.ladder.iter().zip(&q.ladder) {
        assert_eq!(a.scale, b.scale);
        assert_eq!(a.tolerance, b.tolerance);
    }
    let (sp, sq) = (CltSetup::proportional(), CltSetup::simple());
    assert_eq!((sp.kind, sq.kind), (TableKind::Proportional, TableKind::Simple));
    assert_eq!(sp.limit(1.0), normal_cdf(1.0, 0.0, 1.0));
    assert_eq!(sq.limit(1.0), normal_cdf(1.0, 0.0, 2.0));
    // x = 0 rows are exactly one half in both games
    for r in p.plot.iter().chain(&q.plot).filter(|r| r.x == 0.0) {
        assert!((r.empirical - 0.5).abs() <= 1e-12);
    }
}

#[test]
fn clt_reports_carry_reference_entries() {
    let p = verify_clt_proportional(&[100, 1000], &[0.0, 1.0]).unwrap();
    assert!(p.check("reference p(45,55)").unwrap().pass);
    let q = verify_clt_simple(&[100, 1000], &[0.0, 1.0]).unwrap();
    assert!(q.check("reference q(95,105)").unwrap().pass);
}

#[test]
fn winner_reports_are_complementary() {
    let ladder = [100, 200, 500, 1000, 2000];
    let a = verify_winner_degenerate(0.4, 0.6, &ladder).unwrap();
    let b = verify_winner_degenerate(0.6, 0.4, &ladder).unwrap();
    assert!(a.passed() && b.passed());
    for (x, y) in a.plot.iter().zip(&b.plot) {
        assert!((x.empirical + y.empirical - 1.0).abs() <= 1e-12);
    }
    assert!(a.plot.last().unwrap().empirical >= 0.99);
    assert!(b.plot.last().unwrap().empirical <= 0.01);
    assert!(verify_winner_degenerate(0.5, 0.5, &ladder).is_err());
}

#[test]
fn verdict_is_a_function_of_the_report() {
    let r = verify_winner_degenerate(0.4, 0.6, &[100, 1000]).unwrap();
    let back: ConvergenceReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back.evaluate(), r.verdict);
    let mut broken = back.clone();
    broken.ladder[1].metric = broken.ladder[0].metric + 1.0;
    assert_eq!(broken.evaluate(), Verdict::Fail);
}

#[test]
fn small_fluid_run() {
    let cfg = SimConfig::new(1, 0.6, 0.4, 0.0).with_seed(3).with_replications(100);
    let r = verify_fluid(&cfg, &[100, 10_000], &[0.0, 0.2, 0.4]).unwrap();
    let m = r.metrics("sup error");
    assert!(m[1] < m[0]);
    assert!(r
        .checks
        .iter()
        .filter(|c| c.name.starts_with("identity"))
        .all(|c| c.pass));
}

#[test]
fn eulerian_report_names_convention() {
    let r = verify_eulerian(12).unwrap();
    assert!(r.passed());
    assert!(r.notes.iter().any(|n| n.contains("OneBasedN")));
}
