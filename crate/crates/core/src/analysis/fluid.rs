use serde_json::json;
use std::time::Instant;

use super::protocol::{FLUID_EXTINCTION_TOLERANCE, FLUID_FINAL_TOLERANCE, FLUID_PROBE_TIME};
use super::report::{Check, ConvergenceReport, PlotRow, Trend};
use crate::error::{Error, Result};
use crate::format::sig15;
use crate::simulate::{run_replications, SimConfig};

/// Deterministic limit `u_t = u0 T / (T - t) + ((T - t)^2 - T^2) / (2 (T - t))`.
pub fn fluid_path(u0: f64, total: f64, t: f64) -> f64 {
    let r = total - t;
    u0 * total / r + 0.5 * (r * r - total * total) / r
}

/// Time at which the smaller limit fortune reaches zero, `T - sqrt(x0^2 - y0^2)`
/// for `x0 >= y0`.
pub fn extinction_time(x0: f64, y0: f64) -> f64 {
    let (hi, lo) = if x0 >= y0 { (x0, y0) } else { (y0, x0) };
    (x0 + y0) - (hi * hi - lo * lo).sqrt()
}

/// Ensemble means of the simulated pair against the deterministic limit
/// along an `N` ladder. `config` supplies `x0`, `y0`, seed and replication
/// count; its `n_scale` is replaced by each rung.
pub fn verify_fluid(config: &SimConfig, ladder: &[u64], grid: &[f64]) -> Result<ConvergenceReport> {
    let (x0, y0, total) = (config.x0, config.y0, config.total());
    if x0 < y0 || y0 <= 0.0 {
        return Err(Error::domain(format!("need x0 >= y0 > 0, got ({x0}, {y0})")));
    }
    if ladder.is_empty() || ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("ladder must be non-empty and strictly increasing"));
    }
    let tau = extinction_time(x0, y0);
    let limit = tau.min(total) - 0.1;
    if grid.is_empty() || grid.iter().any(|t| !(0.0..=limit).contains(t)) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(format!(
            "grid must be increasing within [0, {limit}], 0.1 before extinction at {tau}"
        )));
    }
    let start = Instant::now();
    let mut sim_grid = grid.to_vec();
    let probe = (FLUID_PROBE_TIME < tau.min(total)).then_some(FLUID_PROBE_TIME);
    if let Some(p) = probe {
        if !sim_grid.contains(&p) {
            sim_grid.push(p);
            sim_grid.sort_by(f64::total_cmp);
        }
    }
    let report_config = json!({
        "x0": x0, "y0": y0, "ladder": ladder, "grid": grid,
        "replications": config.replications, "final_tolerance": FLUID_FINAL_TOLERANCE,
        "extinction_time": tau,
    });
    let mut report = ConvergenceReport::new("fluid", report_config, Trend::Decreasing { slack: 0 });
    report.seed = Some(config.seed);

    for &t in grid {
        let sum = fluid_path(x0, total, t) + fluid_path(y0, total, t);
        report.checks.push(Check::within(
            format!("identity x+y=T-t at t={}", sig15(t)),
            sum,
            total - t,
            1e-12,
        ));
    }

    let mut last = None;
    for (i, &n) in ladder.iter().enumerate() {
        let cfg = SimConfig { n_scale: n, ..*config };
        let paths = run_replications(&cfg, &sim_grid)?;
        let reps = paths.len() as f64;
        let mean_at = |k: usize| {
            let (mut sx, mut sy) = (0.0, 0.0);
            for p in &paths {
                let (x, y, _) = p.stopped_state(k);
                sx += x;
                sy += y;
            }
            (sx / reps, sy / reps)
        };
        let mut worst: f64 = 0.0;
        for (k, &t) in sim_grid.iter().enumerate() {
            if !grid.contains(&t) {
                continue;
            }
            let (mx, my) = mean_at(k);
            let (ux, uy) = (fluid_path(x0, total, t), fluid_path(y0, total, t));
            worst = worst.max((mx - ux).abs()).max((my - uy).abs());
            report.plot.push(PlotRow {
                series: format!("x N={n}"),
                x: t,
                empirical: mx,
                limit: ux,
            });
            report.plot.push(PlotRow {
                series: format!("y N={n}"),
                x: t,
                empirical: my,
                limit: uy,
            });
        }
        let tol = (i + 1 == ladder.len()).then_some(FLUID_FINAL_TOLERANCE);
        report.push_rung("sup error", n as f64, worst, tol);
        last = Some((paths, sim_grid.clone()));
    }

    let (paths, sim_grid) = last.expect("ladder is non-empty");
    let mean_tau = paths.iter().map(|p| p.tau_n).sum::<f64>() / paths.len() as f64;
    report.checks.push(Check::within(
        "mean ruin time at final rung",
        mean_tau,
        tau,
        FLUID_EXTINCTION_TOLERANCE,
    ));
    if let Some(p) = probe {
        let k = sim_grid.iter().position(|t| *t == p).expect("probe on grid");
        let mins: Vec<f64> = paths
            .iter()
            .map(|traj| {
                let (x, y, _) = traj.stopped_state(k);
                x.min(y)
            })
            .collect();
        let smallest = mins.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = mins.iter().sum::<f64>() / mins.len() as f64;
        let target = fluid_path(x0, total, p).min(fluid_path(y0, total, p));
        report.checks.push(Check::within(
            format!("mean min(x,y) at t={}", sig15(p)),
            mean,
            target,
            FLUID_FINAL_TOLERANCE,
        ));
        report.checks.push(Check::above(
            format!("smallest min(x,y) at t={}", sig15(p)),
            smallest,
            0.0,
        ));
    }
    report.note("final-rung tolerance is a pilot-calibrated constant");
    report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_identity_and_extinction() {
        for t in [0.0, 0.2, 0.4] {
            let s = fluid_path(0.6, 1.0, t) + fluid_path(0.4, 1.0, t);
            assert!((s - (1.0 - t)).abs() < 1e-15);
        }
        let tau = extinction_time(0.6, 0.4);
        assert!((tau - (1.0 - 0.2f64.sqrt())).abs() < 1e-15);
        assert!(fluid_path(0.4, 1.0, tau).abs() < 1e-12);
        assert!((fluid_path(0.4, 1.0, 0.5) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn grid_near_extinction_rejected() {
        let cfg = SimConfig::new(100, 0.6, 0.4, 0.0).with_replications(2);
        assert!(matches!(verify_fluid(&cfg, &[100], &[0.0, 0.5]), Err(Error::Domain(_))));
        let swapped = SimConfig::new(100, 0.4, 0.6, 0.0).with_replications(2);
        assert!(verify_fluid(&swapped, &[100], &[0.0]).is_err());
    }
}
