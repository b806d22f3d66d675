use serde_json::json;
use std::time::Instant;

use super::ecdf::EmpiricalCDF;
use super::protocol::{residual_tolerances, RESIDUAL_MOMENT_RELATIVE, RESIDUAL_ORDERS};
use super::report::{Check, ConvergenceReport, PlotRow, Trend};
use crate::error::{Error, Result};
use crate::simulate::{sample_residuals, SimConfig};
use crate::specfn::{s_moment, NoncentralChiSq1, SMomentSpec};

/// `R_N = 3 T^-3 S_N^4` against the non-central chi-squared law with
/// `lambda = 3 z0^2 / T`, plus moments of `S_N` and the count-proxy variant.
pub fn verify_residual_law(config: &SimConfig) -> Result<ConvergenceReport> {
    let start = Instant::now();
    let samples = sample_residuals(config)?;
    let total = samples.units.total_fortune();
    let z0 = samples.units.realized_z0();
    let law = NoncentralChiSq1::new(3.0 * z0 * z0 / total)?;
    let (ks_tol, mean_tol) = residual_tolerances(law.lambda());
    let cdf = |r: f64| law.cdf(r).expect("finite argument");

    let report_config = json!({
        "sim": config.sidecar()?, "lambda": law.lambda(), "ks_tolerance": ks_tol,
        "mean_tolerance": mean_tol, "moment_relative_tolerance": RESIDUAL_MOMENT_RELATIVE,
    });
    let mut report = ConvergenceReport::new("residual", report_config, Trend::None);
    report.seed = Some(config.seed);

    let n = samples.len() as f64;
    let r = EmpiricalCDF::from_slice(&samples.r_values)?;
    report.push_rung("ks R_N", config.n_scale as f64, r.ks_distance(cdf), Some(ks_tol));
    let mean_r = samples.r_values.iter().sum::<f64>() / n;
    report
        .checks
        .push(Check::within("mean R_N", mean_r, law.mean(), mean_tol));

    for q in RESIDUAL_ORDERS {
        // S_N < 0 when tau_N overshoots T; the limit is positive
        let empirical = samples.s_values.iter().map(|s| s.abs().powf(q)).sum::<f64>() / n;
        let target = s_moment(SMomentSpec::new(total, z0, q))?;
        let check = Check::within(
            format!("E[|S|^{q}]"),
            empirical,
            target,
            RESIDUAL_MOMENT_RELATIVE * target,
        );
        report.checks.push(if q == 4.0 { check } else { check.informational() });
    }

    let r_hat: Vec<f64> = samples
        .s_hat_values
        .iter()
        .map(|s| 3.0 * s.powi(4) / total.powi(3))
        .collect();
    let r_hat = EmpiricalCDF::new(r_hat)?;
    report
        .checks
        .push(Check::at_most("ks count-proxy R_N", r_hat.ks_distance(cdf), ks_tol).informational());

    let step = (r.len() / 200).max(1);
    for &x in r.values().iter().step_by(step) {
        report.plot.push(PlotRow {
            series: "R_N".into(),
            x,
            empirical: r.eval(x),
            limit: cdf(x),
        });
    }
    report.note("KS and mean tolerances are pilot-calibrated constants");
    report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report.finalize())
}

/// Mean squared gap between `S_N` and its count proxy against
/// `T N^-1/2 (1 + 3 / sqrt(reps))` at each ladder scale.
pub fn verify_count_proxy_bound(config: &SimConfig, ladder: &[u64]) -> Result<ConvergenceReport> {
    if ladder.is_empty() || ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("ladder must be non-empty and strictly increasing"));
    }
    let start = Instant::now();
    let report_config = json!({ "x0": config.x0, "y0": config.y0, "z0": config.z0,
        "replications": config.replications, "ladder": ladder });
    let mut report = ConvergenceReport::new("count-proxy", report_config, Trend::None);
    report.seed = Some(config.seed);
    for &n in ladder {
        let cfg = SimConfig { n_scale: n, ..*config };
        let samples = sample_residuals(&cfg)?;
        let gap = samples
            .s_values
            .iter()
            .zip(&samples.s_hat_values)
            .map(|(s, h)| (h - s).powi(2))
            .sum::<f64>()
            / samples.len() as f64;
        let bound = samples.units.total_fortune() / (n as f64).sqrt() * (1.0 + 3.0 / (samples.len() as f64).sqrt());
        report.push_rung("E|S_hat - S|^2", n as f64, gap, Some(bound));
    }
    report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report.finalize())
}
