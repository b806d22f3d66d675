use serde::{Deserialize, Serialize};

use super::kummer::{kummer_m, ln_kummer_m, KummerParams, KUMMER_MAX_TERMS};
use crate::error::{Error, Result};

/// Absolute (relative once the sum exceeds 1) bound on the neglected tail of
/// [`g_rho_series`].
pub const G_SERIES_TOL: f64 = 1e-12;

/// `h_rho(x) = M(-rho/3, 1/2, -3x)`, the even martingale family of the
/// limiting diffusion written in the variable `x = u^2 / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HRhoFunction {
    rho: f64,
}

impl HRhoFunction {
    pub fn new(rho: f64) -> Result<Self> {
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::domain(format!("rho must be finite and >= 0, got {rho}")));
        }
        Ok(HRhoFunction { rho })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    fn params(&self, x: f64, k: usize) -> KummerParams {
        KummerParams::new(-self.rho / 3.0 + k as f64, 0.5 + k as f64, -3.0 * x)
    }

    fn check_x(x: f64) -> Result<()> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::domain(format!("h_rho needs x >= 0, got {x}")));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        kummer_m(self.params(x, 0))
    }

    /// `ln h_rho(x)`; `h_rho` is positive on `x >= 0`, and this path stays
    /// finite where `h_rho` itself would overflow.
    pub fn ln_eval(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        let (ln, sign) = ln_kummer_m(self.params(x, 0))?;
        if sign <= 0.0 {
            return Err(Error::Precision(format!("h_{}({x}) evaluated non-positive", self.rho)));
        }
        Ok(ln)
    }

    /// `k`-th derivative: `(-3)^k (a)_k / (b)_k M(a + k, b + k, -3x)` with
    /// `a = -rho/3`, `b = 1/2`.
    pub fn derivative(&self, k: usize, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        let a = -self.rho / 3.0;
        let mut coeff = 1.0;
        for j in 0..k {
            coeff *= -3.0 * (a + j as f64) / (0.5 + j as f64);
        }
        if coeff == 0.0 {
            return Ok(0.0);
        }
        Ok(coeff * kummer_m(self.params(x, k))?)
    }

    /// `g_rho(u) = h_rho(u^2 / 2)`.
    pub fn g(&self, u: f64) -> Result<f64> {
        self.eval(0.5 * u * u)
    }
}

/// `h_rho(x)`; see [`HRhoFunction`].
pub fn h_rho(rho: f64, x: f64) -> Result<f64> {
    HRhoFunction::new(rho)?.eval(x)
}

/// Power-series solution of `g'' + 3u g' - 2 rho g = 0` with `g(0) = a0`,
/// `g'(0) = a1`, using `c_{k+2} = (2 rho - 3k) / ((k+2)(k+1)) c_k`.
///
/// Past `k > 2 rho / 3` each parity chain shrinks by at least `3u^2 / (k+2)`
/// per step; once that ratio is at most 1/2 the tail is bounded by twice the
/// next two terms, and summation stops when that bound drops below
/// [`G_SERIES_TOL`].
pub fn g_rho_series(rho: f64, u: f64, a0: f64, a1: f64) -> Result<f64> {
    if ![rho, u, a0, a1].iter().all(|v| v.is_finite()) {
        return Err(Error::domain("non-finite g_rho arguments"));
    }
    let coeff_next = |k: usize, c: f64| (2.0 * rho - 3.0 * k as f64) / ((k + 2) as f64 * (k + 1) as f64) * c;
    // (c_k, c_{k+1}) and u^k
    let (mut ck, mut ck1) = (a0, a1);
    let mut power = 1.0;
    let mut sum = 0.0;
    for k in 0..KUMMER_MAX_TERMS {
        sum += ck * power;
        let ck2 = coeff_next(k, ck);
        let t1 = ck1 * power * u;
        let t2 = ck2 * power * u * u;
        let decaying = (k + 1) as f64 > 2.0 * rho / 3.0 && 3.0 * u * u / (k + 3) as f64 <= 0.5;
        if decaying && 2.0 * (t1.abs() + t2.abs()) < G_SERIES_TOL * sum.abs().max(1.0) {
            return Ok(sum + t1 + t2);
        }
        ck = ck1;
        ck1 = ck2;
        power *= u;
    }
    Err(Error::Precision(format!(
        "g_rho series for rho = {rho}, u = {u} did not converge in {KUMMER_MAX_TERMS} terms"
    )))
}
