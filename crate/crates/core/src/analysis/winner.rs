use serde_json::json;
use std::time::Instant;

use super::protocol::{COMPLEMENT_TOLERANCE, TABLE_ONE, TABLE_TOLERANCE, WINNER_FINAL_TOLERANCE};
use super::report::{Check, ConvergenceReport, PlotRow, Trend};
use crate::error::{Error, Result};
use crate::exact::{evaluate_points, RuinState, TableKind};

/// `p(N x0, N y0)` along an `N` ladder against its limit `1{x0 < y0}`.
pub fn verify_winner_degenerate(x0: f64, y0: f64, ladder: &[u64]) -> Result<ConvergenceReport> {
    if !(x0 > 0.0 && y0 > 0.0 && x0.is_finite() && y0.is_finite()) {
        return Err(Error::config(format!("need positive finite x0, y0, got ({x0}, {y0})")));
    }
    if x0 == y0 {
        return Err(Error::config("x0 = y0 has no degenerate winner"));
    }
    if ladder.is_empty() || ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("ladder must be non-empty and strictly increasing"));
    }
    let start = Instant::now();
    let limit = if x0 < y0 { 1.0 } else { 0.0 };
    let mut points = Vec::new();
    for &n in ladder {
        let m = (n as f64 * x0).round_ties_even() as usize;
        let k = (n as f64 * y0).round_ties_even() as usize;
        if m == 0 && k == 0 {
            return Err(Error::domain(format!("N = {n} rounds both fortunes to zero")));
        }
        points.push(RuinState::new(m, k));
    }
    let swapped: Vec<RuinState> = points.iter().map(|s| s.swapped()).collect();
    let all: Vec<RuinState> = points.iter().chain(&swapped).copied().collect();
    let values = evaluate_points(TableKind::Proportional, &all)?;
    let (direct, mirror) = values.split_at(points.len());

    let config = json!({ "x0": x0, "y0": y0, "ladder": ladder, "limit": limit,
        "final_tolerance": WINNER_FINAL_TOLERANCE });
    let mut report = ConvergenceReport::new("winner", config, Trend::NonIncreasing { slack: 0 });
    let mut worst_complement: f64 = 0.0;
    for (i, ((&n, s), (&p, &q))) in ladder.iter().zip(&points).zip(direct.iter().zip(mirror)).enumerate() {
        let tol = (i + 1 == ladder.len()).then_some(WINNER_FINAL_TOLERANCE);
        report.push_rung("|p - limit|", n as f64, (p - limit).abs(), tol);
        report.plot.push(PlotRow {
            series: format!("p({},{})", s.m, s.n),
            x: n as f64,
            empirical: p,
            limit,
        });
        worst_complement = worst_complement.max((p + q - 1.0).abs());
    }
    report.checks.push(Check::at_most(
        "max |p(m,n) + p(n,m) - 1|",
        worst_complement,
        COMPLEMENT_TOLERANCE,
    ));
    let (m, n, expected, _) = TABLE_ONE[12];
    let anchor = evaluate_points(TableKind::Proportional, &[RuinState::new(m, n)])?[0];
    report.checks.push(Check::within(
        format!("reference p({m},{n})"),
        anchor,
        expected,
        TABLE_TOLERANCE,
    ));
    report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report.finalize())
}
