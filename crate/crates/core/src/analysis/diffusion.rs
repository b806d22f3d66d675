use rayon::prelude::*;
use serde_json::json;
use std::time::Instant;

use super::ecdf::{ks_two_sample, ks_two_sample_critical, EmpiricalCDF};
use super::normal::normal_cdf;
use super::protocol::{DIFFUSION_KS_TOLERANCE, MOMENT_STANDARD_ERRORS, TWO_SAMPLE_ALPHA};
use super::report::{Check, ConvergenceReport, PlotRow, Trend};
use crate::error::{Error, Result};
use crate::format::sig15;
use crate::simulate::{
    diffusion_mean, diffusion_variance, replication_rng, run_replications, sample_diffusion, SimConfig,
};

/// Marginals of the scaled difference `z^N_t` against the Gaussian law of
/// the limiting diffusion, and against exact draws of that diffusion.
pub fn verify_diffusion(config: &SimConfig, t_grid: &[f64]) -> Result<ConvergenceReport> {
    let units = config.require_critical()?;
    let total = units.total_fortune();
    let z0 = units.realized_z0();
    if t_grid.is_empty()
        || t_grid.windows(2).any(|w| w[1] <= w[0])
        || t_grid.iter().any(|t| !(0.0..=total - 0.1).contains(t))
    {
        return Err(Error::domain(format!(
            "time grid must be increasing within [0, {}]",
            total - 0.1
        )));
    }
    let start = Instant::now();
    let mut grid = vec![0.0];
    grid.extend(t_grid.iter().copied().filter(|t| *t > 0.0));
    let paths = run_replications(config, &grid)?;
    let exact: Vec<Vec<f64>> = (0..config.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(config.seed.wrapping_add(1), rep);
            sample_diffusion(total, z0, &grid, &mut rng).map(|p| p.z)
        })
        .collect::<Result<_>>()?;

    let report_config = json!({
        "sim": config.sidecar()?, "t_grid": t_grid, "ks_tolerance": DIFFUSION_KS_TOLERANCE,
        "moment_standard_errors": MOMENT_STANDARD_ERRORS, "two_sample_alpha": TWO_SAMPLE_ALPHA,
    });
    let mut report = ConvergenceReport::new("diffusion", report_config, Trend::None);
    report.seed = Some(config.seed);

    let start_gap = paths
        .iter()
        .map(|p| (p.stopped_state(0).2 - z0).abs())
        .fold(0.0, f64::max);
    report
        .checks
        .push(Check::at_most("max |z_0 - realized z0|", start_gap, 1e-12));

    let reps = paths.len();
    let n = reps as f64;
    for (k, &t) in grid.iter().enumerate().skip(1) {
        let zs: Vec<f64> = paths.iter().map(|p| p.stopped_state(k).2).collect();
        let (mu, var) = (diffusion_mean(total, z0, t), diffusion_variance(total, t));
        let mean = zs.iter().sum::<f64>() / n;
        let sample_var = zs.iter().map(|z| (z - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let ecdf = EmpiricalCDF::new(zs)?;
        let ks = ecdf.ks_distance(|z| normal_cdf(z, mu, var));
        report.push_rung(format!("ks t={}", sig15(t)), n, ks, Some(DIFFUSION_KS_TOLERANCE));
        report.checks.push(Check::within(
            format!("mean t={}", sig15(t)),
            mean,
            mu,
            MOMENT_STANDARD_ERRORS * (var / n).sqrt(),
        ));
        report.checks.push(Check::within(
            format!("variance t={}", sig15(t)),
            sample_var,
            var,
            MOMENT_STANDARD_ERRORS * var * (2.0 / (n - 1.0)).sqrt(),
        ));
        let other = EmpiricalCDF::new(exact.iter().map(|z| z[k]).collect())?;
        report.checks.push(Check::at_most(
            format!("two-sample ks vs exact sampler t={}", sig15(t)),
            ks_two_sample(&ecdf, &other),
            ks_two_sample_critical(reps, reps, TWO_SAMPLE_ALPHA),
        ));
        let step = (ecdf.len() / 200).max(1);
        for &z in ecdf.values().iter().step_by(step) {
            report.plot.push(PlotRow {
                series: format!("t={}", sig15(t)),
                x: z,
                empirical: ecdf.eval(z),
                limit: normal_cdf(z, mu, var),
            });
        }
    }
    report.note("KS tolerance is a pilot-calibrated constant");
    report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report.finalize())
}
