use ruinlab::analysis::std_normal_cdf;
use ruinlab::specfn::{
    g_rho_series, gamma, h_rho, kummer_m, laguerre, laguerre_via_kummer, s_moment, HRhoFunction, KummerParams,
    NoncentralChiSq1, SMomentSpec,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Plain forward series of `M(a, b, z)`, no transformation.
fn kummer_naive(a: f64, b: f64, z: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for n in 0..400 {
        let n = n as f64;
        term *= (a + n) / (b + n) * z / (n + 1.0);
        sum += term;
    }
    sum
}

#[test]
fn kummer_transformation() {
    for a in [0.5, 1.5, 2.1] {
        for i in -20..=20 {
            let z = i as f64 * 0.25;
            let lhs = (-z).exp() * kummer_m(KummerParams::new(a, 0.5, z)).unwrap();
            let rhs = kummer_m(KummerParams::new(0.5 - a, 0.5, -z)).unwrap();
            // M(1.5, 1/2, -1/2) is an exact zero, hence the absolute floor
            assert!(
                (lhs - rhs).abs() <= 1e-9 * rhs.abs() + 1e-15,
                "a={a} z={z}: {lhs} vs {rhs}"
            );
            let oracle = kummer_naive(a, 0.5, z);
            let got = kummer_m(KummerParams::new(a, 0.5, z)).unwrap();
            assert!(
                (got - oracle).abs() <= 1e-10 * oracle.abs() + 1e-15,
                "a={a} z={z}: {got} vs {oracle}"
            );
        }
    }
}

#[test]
fn kummer_examples() {
    for z in [-7.0, 0.0, 3.0] {
        assert_eq!(kummer_m(KummerParams::new(0.0, 0.5, z)).unwrap(), 1.0);
    }
    assert_eq!(kummer_m(KummerParams::new(1.3, 2.5, 0.0)).unwrap(), 1.0);
    for x in [0.0, 0.5, 2.0] {
        let v = kummer_m(KummerParams::new(-1.0, 0.5, -3.0 * x)).unwrap();
        assert!((v - (1.0 + 6.0 * x)).abs() < 1e-12);
    }
}

#[test]
fn h_rho_values() {
    for rho in [0.0, 1.0, 3.0, 4.5] {
        assert_eq!(h_rho(rho, 0.0).unwrap(), 1.0);
    }
    assert!((h_rho(3.0, 0.25).unwrap() - 2.5).abs() < 1e-12);
    // M(-2, 1/2, -3): 1 + 12 + 12
    assert!((h_rho(6.0, 1.0).unwrap() - 25.0).abs() < 1e-11);
    assert!(h_rho(-1.0, 1.0).is_err());
    assert!(h_rho(1.0, -1.0).is_err());
}

#[test]
fn ode_residual() {
    let step = 1e-4;
    for rho in [1.0, 2.0, 3.0, 4.5] {
        let h = HRhoFunction::new(rho).unwrap();
        for i in 1..=40 {
            let x = i as f64 * 0.25;
            let (lo, mid, hi) = (h.eval(x - step).unwrap(), h.eval(x).unwrap(), h.eval(x + step).unwrap());
            let d1 = (hi - lo) / (2.0 * step);
            let d2 = (hi - 2.0 * mid + lo) / (step * step);
            let terms = [x * d2, (0.5 + 3.0 * x) * d1, rho * mid];
            let scale = terms.iter().fold(1.0f64, |m, t| m.max(t.abs()));
            let residual = (terms[0] + terms[1] - terms[2]) / scale;
            assert!(residual.abs() <= 1e-4, "rho={rho} x={x}: {residual:e}");
        }
    }
}

#[test]
fn analytic_derivatives_match_differences() {
    let step = 1e-5;
    for rho in [1.0, 4.5] {
        let h = HRhoFunction::new(rho).unwrap();
        for x in [0.3, 2.0, 7.5] {
            let fd = (h.eval(x + step).unwrap() - h.eval(x - step).unwrap()) / (2.0 * step);
            assert!(rel(h.derivative(1, x).unwrap(), fd) < 1e-6);
            let fd2 = (h.derivative(1, x + step).unwrap() - h.derivative(1, x - step).unwrap()) / (2.0 * step);
            assert!(rel(h.derivative(2, x).unwrap(), fd2) < 1e-6);
        }
    }
}

#[test]
fn growth_bounds_on_disjoint_grid() {
    for rho in [1.0, 2.0, 4.5, 7.0] {
        let h = HRhoFunction::new(rho).unwrap();
        let ratio = |x: f64| h.eval(x).unwrap() / x.powf(rho / 3.0);
        let calib: Vec<f64> = (1..=10).map(|i| 10.0 * i as f64).collect();
        let c1 = 0.5 * calib.iter().map(|x| ratio(*x)).fold(f64::INFINITY, f64::min);
        let c2 = 2.0 * calib.iter().map(|x| ratio(*x)).fold(0.0, f64::max);
        for x in [15.0, 35.0, 55.0, 95.0, 150.0, 400.0, 1000.0] {
            let r = ratio(x);
            assert!(c1 <= r && r <= c2, "rho={rho} x={x}: {c1} <= {r} <= {c2}");
        }
    }
}

#[test]
fn derivative_bounds_on_disjoint_grid() {
    for rho in [1.0, 2.0, 3.0, 4.5] {
        let h = HRhoFunction::new(rho).unwrap();
        for k in 0..=2usize {
            let ratio = |x: f64| h.derivative(k, x).unwrap().abs() / x.max(1.0).powf(rho / 3.0 - k as f64);
            let c3 = 1.5 * (0..=200).map(|i| ratio(i as f64 * 0.5)).fold(0.0, f64::max);
            for i in 0..200 {
                let x = 0.25 + i as f64 * 0.5;
                assert!(ratio(x) <= c3, "rho={rho} k={k} x={x}");
            }
        }
    }
}

#[test]
fn even_series_solution_is_h_of_half_square() {
    assert_eq!(g_rho_series(2.7, 0.0, 1.0, 0.0).unwrap(), 1.0);
    assert!((g_rho_series(3.0, 1.0, 1.0, 0.0).unwrap() - 4.0).abs() < 1e-9);
    let v = g_rho_series(1.5, 0.7, 1.0, 0.0).unwrap();
    assert!((v - h_rho(1.5, 0.245).unwrap()).abs() < 1e-9);
    for rho in [0.5, 2.0, 3.3, 5.0] {
        for u in [0.1, 0.9, 1.7, 2.5] {
            let s = g_rho_series(rho, u, 1.0, 0.0).unwrap();
            let h = HRhoFunction::new(rho).unwrap().g(u).unwrap();
            assert!(rel(s, h) < 1e-9, "rho={rho} u={u}");
        }
    }
}

#[test]
fn laguerre_identities() {
    for x in [-2.0, 0.0, 1.5] {
        assert_eq!(laguerre(0, -0.5, x).unwrap(), 1.0);
        assert!((laguerre(1, -0.5, x).unwrap() - (0.5 - x)).abs() < 1e-15);
    }
    for m in 0..=12 {
        for alpha in [-0.5, 0.0, 1.5] {
            for x in [-1.5, 0.3, 4.0] {
                let (a, b) = (
                    laguerre(m, alpha, x).unwrap(),
                    laguerre_via_kummer(m, alpha, x).unwrap(),
                );
                assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "m={m} alpha={alpha} x={x}");
            }
        }
    }
    for m in 0..=6usize {
        for w in [0.0, 0.5] {
            let fact: f64 = (1..=m).map(|j| j as f64).product();
            let lhs = fact * laguerre(m, -0.5, -3.0 * w).unwrap();
            let rhs =
                kummer_m(KummerParams::new(-(m as f64), 0.5, -3.0 * w)).unwrap() * gamma(0.5 + m as f64) / gamma(0.5);
            assert!(rel(lhs, rhs) < 1e-9, "m={m} w={w}");
        }
    }
}

#[test]
fn laguerre_generating_function() {
    let lambda: f64 = 0.3;
    for w in [0.0, 0.5] {
        let partial: f64 = (0..=30)
            .map(|m| lambda.powi(m as i32) * laguerre(m, -0.5, -3.0 * w).unwrap())
            .sum();
        let closed = (3.0 * w * lambda / (1.0 - lambda)).exp() / (1.0 - lambda).sqrt();
        assert!((partial - closed).abs() <= 1e-8, "w={w}: {partial} vs {closed}");
    }
}

/// `E[(Z + mu)^(2m)]` by binomial expansion with `E[Z^(2j)] = (2j - 1)!!`.
fn shifted_normal_even_moment(mu: f64, m: u32) -> f64 {
    let mut total = 0.0;
    for j in 0..=m {
        let choose: f64 = (0..2 * j).map(|i| (2 * m - i) as f64 / (i + 1) as f64).product();
        let dfact: f64 = (1..=j).map(|i| (2 * i - 1) as f64).product();
        total += choose * mu.powi((2 * m - 2 * j) as i32) * dfact;
    }
    total
}

#[test]
fn residual_moments_are_chi_square_moments() {
    for total in [1.0, 2.0] {
        for z0 in [0.0, 1.0] {
            let lambda = 3.0 * z0 * z0 / total;
            let law = NoncentralChiSq1::new(lambda).unwrap();
            for m in 1..=3u32 {
                let s4m = s_moment(SMomentSpec::new(total, z0, 4.0 * m as f64)).unwrap();
                let lhs = 3f64.powi(m as i32) * total.powf(-3.0 * m as f64) * s4m;
                let rhs = law.moment(m as usize).unwrap();
                assert!(rel(lhs, rhs) < 1e-9, "T={total} z0={z0} m={m}: {lhs} vs {rhs}");
                assert!(rel(rhs, shifted_normal_even_moment(lambda.sqrt(), m)) < 1e-12);
            }
        }
    }
}

#[test]
fn s_moment_examples() {
    let s = |t, z0, q| s_moment(SMomentSpec::new(t, z0, q)).unwrap();
    assert!((s(1.0, 0.0, 4.0) - 1.0 / 3.0).abs() < 1e-13);
    assert!((s(1.0, 1.0, 4.0) - 4.0 / 3.0).abs() < 1e-13);
    assert!((s(2.0, 0.0, 4.0) - 8.0 / 3.0).abs() < 1e-12);
    assert!(s_moment(SMomentSpec::new(1.0, 0.0, 0.0)).is_err());
    assert!(s_moment(SMomentSpec::new(0.0, 0.0, 1.0)).is_err());
}

#[test]
fn noncentral_cdf_against_normal_route() {
    let central = NoncentralChiSq1::new(0.0).unwrap();
    assert!((central.cdf(1.0).unwrap() - 0.682689492137086).abs() < 1e-12);
    assert!(central.cdf(-1.0).is_err());
    for lambda in [0.0f64, 0.5, 3.0, 12.0] {
        let law = NoncentralChiSq1::new(lambda).unwrap();
        let mu = lambda.sqrt();
        for x in [0.01f64, 0.4, 1.0, 3.0, 9.0, 25.0] {
            let r = x.sqrt();
            let oracle = std_normal_cdf(r - mu) - std_normal_cdf(-r - mu);
            assert!((law.cdf(x).unwrap() - oracle).abs() < 1e-11, "lambda={lambda} x={x}");
        }
        assert!((law.mean() - (1.0 + lambda)).abs() < 1e-12);
        assert!((law.variance() - 2.0 * (1.0 + 2.0 * lambda)).abs() < 1e-12);
    }
}
