use serde::Serialize;

use crate::error::{Error, Result};

/// Empirical distribution of a finite sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalCDF {
    sorted: Vec<f64>,
}

impl EmpiricalCDF {
    pub fn new(mut sample: Vec<f64>) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::domain("empirical CDF of an empty sample"));
        }
        if sample.iter().any(|v| v.is_nan()) {
            return Err(Error::domain("sample contains NaN"));
        }
        sample.sort_by(f64::total_cmp);
        Ok(EmpiricalCDF { sorted: sample })
    }

    pub fn from_slice(sample: &[f64]) -> Result<Self> {
        Self::new(sample.to_vec())
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    /// `F_n(x)`: fraction of the sample `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|v| *v <= x) as f64 / self.len() as f64
    }

    /// `F_n(x-)`: fraction of the sample `< x`.
    pub fn eval_left(&self, x: f64) -> f64 {
        self.sorted.partition_point(|v| *v < x) as f64 / self.len() as f64
    }

    /// Mean of `f` over the sample.
    pub fn mean_of(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.sorted.iter().map(|v| f(*v)).sum::<f64>() / self.len() as f64
    }

    /// Kolmogorov-Smirnov distance to `cdf`: the largest gap between the
    /// step function and `cdf` at the sample points, taking left limits on
    /// both sides so atoms of `cdf` are matched correctly.
    pub fn ks_distance(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        let n = self.len() as f64;
        let mut worst: f64 = 0.0;
        let mut i = 0;
        while i < self.sorted.len() {
            let v = self.sorted[i];
            let mut j = i;
            while j < self.sorted.len() && self.sorted[j] == v {
                j += 1;
            }
            let (below, upto) = (i as f64 / n, j as f64 / n);
            let at = cdf(v);
            let left = cdf(v.next_down());
            worst = worst.max((upto - at).abs()).max((below - left).abs());
            i = j;
        }
        worst.min(1.0)
    }
}

/// `sup |F(x) - F_n(x)|` for a sample against a reference CDF.
pub fn ks_distance(sample: &EmpiricalCDF, cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sample.len() < 2 {
        return Err(Error::domain("KS distance needs at least two sample points"));
    }
    Ok(sample.ks_distance(cdf))
}

/// Two-sample KS statistic `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &EmpiricalCDF, b: &EmpiricalCDF) -> f64 {
    let (xa, xb) = (a.values(), b.values());
    let (mut i, mut j) = (0, 0);
    let mut worst: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let v = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] == v {
            i += 1;
        }
        while j < xb.len() && xb[j] == v {
            j += 1;
        }
        let gap = (i as f64 / xa.len() as f64 - j as f64 / xb.len() as f64).abs();
        worst = worst.max(gap);
    }
    worst
}

/// Asymptotic two-sample KS critical value `c(alpha) sqrt((n + m) / (n m))`.
pub fn ks_two_sample_critical(n: usize, m: usize, alpha: f64) -> f64 {
    let c = (-0.5 * (alpha / 2.0).ln()).sqrt();
    c * ((n + m) as f64 / (n * m) as f64).sqrt()
}
