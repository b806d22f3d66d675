use statrs::function::gamma::{gamma_lr, gamma_ur};

/// Standard normal CDF from the regularised incomplete gamma function,
/// `Phi(x) = (1 +/- P(1/2, x^2/2)) / 2`, taking the upper tail `Q` for
/// negative `x` so small probabilities keep their relative accuracy.
pub fn std_normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_infinite() {
        return if x > 0.0 { 1.0 } else { 0.0 };
    }
    let half_sq = 0.5 * x * x;
    if half_sq == 0.0 {
        return 0.5;
    }
    if x < 0.0 {
        0.5 * gamma_ur(0.5, half_sq)
    } else {
        0.5 + 0.5 * gamma_lr(0.5, half_sq)
    }
}

/// CDF of `N(mean, variance)`; a point mass at `mean` when `variance == 0`.
pub fn normal_cdf(x: f64, mean: f64, variance: f64) -> f64 {
    if variance == 0.0 {
        return if x >= mean { 1.0 } else { 0.0 };
    }
    std_normal_cdf((x - mean) / variance.sqrt())
}
