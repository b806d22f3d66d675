use serde::{Deserialize, Serialize};

use super::{gamma, HRhoFunction};
use crate::error::{Error, Result};

/// Inputs of the moment formula for the limiting residual time `S`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SMomentSpec {
    /// Total initial fortune `T > 0` in macroscopic units.
    pub total: f64,
    /// Scaled initial difference `z0`.
    pub z0: f64,
    /// Moment order `q > 0`.
    pub q: f64,
}

impl SMomentSpec {
    pub fn new(total: f64, z0: f64, q: f64) -> Self {
        SMomentSpec { total, z0, q }
    }

    /// `w = z0^2 / (2T)`.
    pub fn w(&self) -> f64 {
        self.z0 * self.z0 / (2.0 * self.total)
    }

    /// Non-centrality of `R = 3 T^-3 S^4`: `6w = 3 z0^2 / T`.
    pub fn lambda(&self) -> f64 {
        6.0 * self.w()
    }
}

/// `E[S^q] = (2/3)^(q/4) Gamma(1/2 + q/4) / Gamma(1/2) T^(3q/4) h_{3q/4}(z0^2 / 2T)`.
pub fn s_moment(spec: SMomentSpec) -> Result<f64> {
    let SMomentSpec { total, z0, q } = spec;
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::domain(format!("T must be > 0, got {total}")));
    }
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::domain(format!("moment order q must be > 0, got {q}")));
    }
    if !z0.is_finite() {
        return Err(Error::domain("z0 must be finite"));
    }
    let h = HRhoFunction::new(0.75 * q)?;
    let ratio = gamma(0.5 + 0.25 * q) / gamma(0.5);
    Ok((2.0f64 / 3.0).powf(0.25 * q) * ratio * total.powf(0.75 * q) * h.eval(spec.w())?)
}
