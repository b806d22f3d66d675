//! Pinned experiment constants: seeds, ladders and tolerances. Final-rung
//! tolerances are pilot-calibrated artifact choices, not derived bounds.

/// Reference rows `(m, n, p, q)` of the published win-probability table,
/// rounded to three decimals.
pub const TABLE_ONE: [(usize, usize, f64, f64); 15] = [
    (8, 12, 0.939, 0.820),
    (9, 11, 0.779, 0.676),
    (10, 10, 0.5, 0.5),
    (45, 55, 0.958, 0.843),
    (48, 52, 0.755, 0.656),
    (50, 50, 0.5, 0.5),
    (90, 110, 0.993, 0.922),
    (95, 105, 0.890, 0.761),
    (100, 100, 0.5, 0.5),
    (480, 520, 0.986, 0.897),
    (490, 510, 0.863, 0.737),
    (500, 500, 0.5, 0.5),
    (960, 1040, 0.999, 0.963),
    (980, 1020, 0.939, 0.815),
    (1000, 1000, 0.5, 0.5),
];

/// Half a unit in the third decimal.
pub const TABLE_TOLERANCE: f64 = 5e-4;

pub const CLT_LADDER: [usize; 3] = [100, 1_000, 10_000];
pub const CLT_X_GRID: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
pub const CLT_FINAL_TOLERANCE: f64 = 0.01;
/// Rungs allowed to break the non-increasing trend.
pub const CLT_SLACK: usize = 0;

pub const FLUID_SEED: u64 = 41;
pub const FLUID_X0: f64 = 0.6;
pub const FLUID_Y0: f64 = 0.4;
pub const FLUID_LADDER: [u64; 3] = [100, 1_000, 10_000];
pub const FLUID_REPLICATIONS: usize = 200;
pub const FLUID_GRID_POINTS: usize = 10;
pub const FLUID_GRID_END: f64 = 0.45;
pub const FLUID_FINAL_TOLERANCE: f64 = 0.05;
pub const FLUID_PROBE_TIME: f64 = 0.5;
pub const FLUID_EXTINCTION_TOLERANCE: f64 = 0.02;

pub const WINNER_LADDER: [u64; 5] = [100, 200, 500, 1_000, 2_000];
pub const WINNER_FINAL_TOLERANCE: f64 = 0.01;
pub const COMPLEMENT_TOLERANCE: f64 = 1e-12;

pub const DIFFUSION_SEED: u64 = 42;
pub const DIFFUSION_N: u64 = 10_000;
pub const DIFFUSION_REPLICATIONS: usize = 2_000;
pub const DIFFUSION_TIMES: [f64; 3] = [0.25, 0.5, 0.75];
pub const DIFFUSION_KS_TOLERANCE: f64 = 0.05;
/// Standard errors allowed on the mean and variance at each grid time.
pub const MOMENT_STANDARD_ERRORS: f64 = 3.0;
/// Significance level of the two-sample KS comparison with the exact sampler.
pub const TWO_SAMPLE_ALPHA: f64 = 1e-3;

pub const RESIDUAL_SEED: u64 = 43;
pub const RESIDUAL_N: u64 = 10_000;
pub const RESIDUAL_REPLICATIONS: usize = 2_000;
pub const RESIDUAL_KS_TOLERANCE_CENTRAL: f64 = 0.05;
pub const RESIDUAL_KS_TOLERANCE_OFFSET: f64 = 0.06;
pub const RESIDUAL_MEAN_TOLERANCE_CENTRAL: f64 = 0.15;
pub const RESIDUAL_MEAN_TOLERANCE_OFFSET: f64 = 0.5;
pub const RESIDUAL_MOMENT_RELATIVE: f64 = 0.10;
pub const RESIDUAL_ORDERS: [f64; 3] = [1.0, 2.0, 4.0];

pub const STOPPING_SEED: u64 = 44;
pub const STOPPING_LADDER: [u64; 2] = [1_000, 10_000];
pub const STOPPING_REPLICATIONS: usize = 2_000;
pub const STOPPING_RHOS: [f64; 1] = [3.0];
pub const STOPPING_RELATIVE_TOLERANCE: f64 = 0.10;
/// Lower end of the exponent range the identity is claimed for.
pub const STOPPING_MIN_RHO: f64 = 2.25;

pub const PROXY_SEED: u64 = 45;
pub const PROXY_LADDER: [u64; 2] = [1_000, 10_000];
pub const PROXY_REPLICATIONS: usize = 2_000;

pub const INEQUALITY_SEED: u64 = 46;
pub const INEQUALITY_DRAWS: usize = 100_000;
pub const INEQUALITY_MAX_UNITS: u64 = 10_000;
pub const INEQUALITY_B_RANGE: (f64, f64) = (1.0, 12.0);
/// Width of the sampled band of `b / a` above its threshold.
pub const INEQUALITY_RATIO_WIDTH: f64 = 8.0;
pub const INEQUALITY_FLOOR: f64 = -1e-9;

pub const EULERIAN_MAX_TOTAL: usize = 12;

/// Residual-law KS and mean tolerances for a given non-centrality.
pub fn residual_tolerances(lambda: f64) -> (f64, f64) {
    if lambda == 0.0 {
        (RESIDUAL_KS_TOLERANCE_CENTRAL, RESIDUAL_MEAN_TOLERANCE_CENTRAL)
    } else {
        (RESIDUAL_KS_TOLERANCE_OFFSET, RESIDUAL_MEAN_TOLERANCE_OFFSET)
    }
}

/// `FLUID_GRID_POINTS` equally spaced times on `[0, FLUID_GRID_END]`.
pub fn fluid_grid() -> Vec<f64> {
    let k = FLUID_GRID_POINTS - 1;
    (0..=k).map(|i| FLUID_GRID_END * i as f64 / k as f64).collect()
}
