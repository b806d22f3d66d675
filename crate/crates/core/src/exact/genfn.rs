use crate::error::{Error, Result};

/// Half-width of the refused band around the removable singularity `x = y`.
pub const DIAGONAL_BAND: f64 = 1e-6;

/// Closed form of `phi(x, y) = sum_{m,n >= 0} p(m, n) x^m y^n` (with
/// `p(0, 0) = 1`):
/// `x e^-x / (x e^-x - y e^-y) + y / (1 - y) / (y - x)`.
pub fn generating_function_closed(x: f64, y: f64) -> Result<f64> {
    let inside = |v: f64| v.is_finite() && (0.0..1.0).contains(&v);
    if !inside(x) || !inside(y) {
        return Err(Error::domain(format!(
            "generating function needs x, y in [0, 1); got ({x}, {y})"
        )));
    }
    if (x - y).abs() <= DIAGONAL_BAND {
        return Err(Error::Singularity(format!(
            "|x - y| = {} is within {DIAGONAL_BAND} of the diagonal",
            (x - y).abs()
        )));
    }
    let ax = x * (-x).exp();
    let ay = y * (-y).exp();
    Ok(ax / (ax - ay) + y / (1.0 - y) / (y - x))
}
