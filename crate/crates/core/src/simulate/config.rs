use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Seed used when neither a flag nor the environment supplies one.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Parameters of a scaled simulation run.
///
/// Initial unit counts are derived from the macroscopic inputs by
/// [`SimConfig::initial_units`]: the total `N T` is rounded half-to-even, and
/// A receives `round(N x0 + sqrt(N) z0 / 2)` units with B taking the rest, so
/// the unit difference is `sqrt(N) z0` (up to rounding) while the total
/// stays `N T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Scale parameter `N`.
    pub n_scale: u64,
    pub x0: f64,
    pub y0: f64,
    /// Scaled initial difference; zero outside the critical setup.
    pub z0: f64,
    pub seed: u64,
    pub replications: usize,
}

impl SimConfig {
    pub fn new(n_scale: u64, x0: f64, y0: f64, z0: f64) -> Self {
        SimConfig {
            n_scale,
            x0,
            y0,
            z0,
            seed: DEFAULT_SEED,
            replications: 1,
        }
    }

    /// Critical configuration `x0 = y0 = T / 2` with offset `z0`.
    pub fn critical(n_scale: u64, total: f64, z0: f64) -> Self {
        SimConfig::new(n_scale, 0.5 * total, 0.5 * total, z0)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_replications(mut self, replications: usize) -> Self {
        self.replications = replications;
        self
    }

    /// Macroscopic total fortune `T = x0 + y0`.
    pub fn total(&self) -> f64 {
        self.x0 + self.y0
    }

    pub fn initial_units(&self) -> Result<InitialUnits> {
        if self.n_scale == 0 {
            return Err(Error::config("scale N must be a positive integer"));
        }
        if ![self.x0, self.y0, self.z0].iter().all(|v| v.is_finite()) {
            return Err(Error::config("x0, y0 and z0 must be finite"));
        }
        if self.x0 < 0.0 || self.y0 < 0.0 || self.total() <= 0.0 {
            return Err(Error::config(format!(
                "need x0, y0 >= 0 with x0 + y0 > 0, got ({}, {})",
                self.x0, self.y0
            )));
        }
        if self.replications == 0 {
            return Err(Error::config("replications must be positive"));
        }
        let n = self.n_scale as f64;
        let total = (n * self.total()).round_ties_even();
        let a = (n * self.x0 + 0.5 * n.sqrt() * self.z0).round_ties_even();
        let b = total - a;
        if a < 1.0 || b < 1.0 {
            return Err(Error::config(format!(
                "initial units ({a}, {b}) must both be positive integers"
            )));
        }
        Ok(InitialUnits {
            a: a as u64,
            b: b as u64,
            n_scale: self.n_scale,
        })
    }

    /// Critical runs need `|N x0 - N y0| <= 2 sqrt(N) (|z0| + 1)` in units.
    pub fn is_critical(&self) -> Result<bool> {
        let units = self.initial_units()?;
        let n = self.n_scale as f64;
        let gap = (units.a as f64 - units.b as f64).abs();
        Ok(gap <= 2.0 * n.sqrt() * (self.z0.abs() + 1.0))
    }

    pub(crate) fn require_critical(&self) -> Result<InitialUnits> {
        if !self.is_critical()? {
            return Err(Error::config(format!(
                "x0 = {}, y0 = {} is not a critical configuration at N = {}",
                self.x0, self.y0, self.n_scale
            )));
        }
        self.initial_units()
    }

    /// JSON echo of the configuration and the realised initial state, written
    /// next to every export.
    pub fn sidecar(&self) -> Result<serde_json::Value> {
        let units = self.initial_units()?;
        Ok(serde_json::json!({
            "config": self,
            "total": self.total(),
            "initial_units": units,
            "realized_z0": units.realized_z0(),
            "realized_total": units.total_fortune(),
        }))
    }
}

/// Integer starting fortunes at scale `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialUnits {
    pub a: u64,
    pub b: u64,
    pub n_scale: u64,
}

impl InitialUnits {
    pub fn units_total(&self) -> u64 {
        self.a + self.b
    }

    /// `T_N = (a + b) / N`.
    pub fn total_fortune(&self) -> f64 {
        self.units_total() as f64 / self.n_scale as f64
    }

    /// `z0` recomputed from the rounded units: `(a - b) / sqrt(N)`.
    pub fn realized_z0(&self) -> f64 {
        (self.a as f64 - self.b as f64) / (self.n_scale as f64).sqrt()
    }
}
