use rand::Rng;
use serde_json::json;
use std::time::Instant;

use super::protocol::{INEQUALITY_B_RANGE, INEQUALITY_FLOOR, INEQUALITY_MAX_UNITS, INEQUALITY_RATIO_WIDTH};
use super::report::{Check, ConvergenceReport, Trend};
use crate::error::{Error, Result};
use crate::format::sig15;
use crate::simulate::{drift_inequality, replication_rng};

/// Threshold `ln 2 / ln(3/2)` that `b / a` must exceed.
pub fn ratio_threshold() -> f64 {
    2f64.ln() / 1.5f64.ln()
}

/// Random states `x >= y >= 1` and exponents `b >= 1`, `b / a` above the
/// threshold; counts normalised drifts below the floor.
pub fn verify_drift_inequality(draws: usize, seed: u64) -> Result<ConvergenceReport> {
    if draws == 0 {
        return Err(Error::domain("need at least one draw"));
    }
    let start = Instant::now();
    let mut rng = replication_rng(seed, 0);
    let (b_lo, b_hi) = INEQUALITY_B_RANGE;
    let threshold = ratio_threshold();
    let mut violations = 0usize;
    let mut worst = f64::INFINITY;
    let mut worst_at = (0, 0, 0.0, 0.0);
    for _ in 0..draws {
        let x = rng.random_range(1..=INEQUALITY_MAX_UNITS);
        let y = rng.random_range(1..=x);
        let b = rng.random_range(b_lo..=b_hi);
        // (0, width]: strictly above the threshold
        let ratio = threshold + INEQUALITY_RATIO_WIDTH * (1.0 - rng.random::<f64>());
        let a = b / ratio;
        let v = drift_inequality(x, y, a, b);
        if v < INEQUALITY_FLOOR {
            violations += 1;
        }
        if v < worst {
            worst = v;
            worst_at = (x, y, a, b);
        }
    }
    let config = json!({ "draws": draws, "max_units": INEQUALITY_MAX_UNITS,
        "b_range": [b_lo, b_hi], "ratio_range": [threshold, threshold + INEQUALITY_RATIO_WIDTH],
        "floor": INEQUALITY_FLOOR });
    let mut report = ConvergenceReport::new("inequality", config, Trend::None);
    report.seed = Some(seed);
    report.checks.push(Check::at_most("violations", violations as f64, 0.0));
    report.checks.push(Check::at_most(
        "smallest normalised drift (negated)",
        -worst,
        -INEQUALITY_FLOOR,
    ));
    let (x, y, a, b) = worst_at;
    report.note(format!(
        "smallest drift {} at x={x}, y={y}, a={}, b={}",
        sig15(worst),
        sig15(a),
        sig15(b)
    ));
    report.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(report.finalize())
}
