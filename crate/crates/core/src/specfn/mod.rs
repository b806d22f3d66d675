//! Special functions behind the residual ruin-time law.
//!
//! `h_rho(x) = M(-rho/3, 1/2, -3x)` is the even solution of
//! `x h'' + (1/2 + 3x) h' - rho h = 0`; substituting `x = u^2 / 2` gives the
//! power-series family `g_rho`. The moments of the limiting residual time are
//! `h_rho` values, and at integer `rho / 3` they collapse to Laguerre
//! polynomials, i.e. to the moments of a non-central chi-squared law with one
//! degree of freedom.

mod hrho;
mod kummer;
mod laguerre;
mod moments;
mod ncx2;

pub use hrho::{g_rho_series, h_rho, HRhoFunction, G_SERIES_TOL};
pub use kummer::{kummer_m, ln_kummer_m, KummerParams, KUMMER_MAX_TERMS, KUMMER_Z_MAX};
pub use laguerre::{laguerre, laguerre_via_kummer};
pub use moments::{s_moment, SMomentSpec};
pub use ncx2::NoncentralChiSq1;

/// `Gamma(x)`; callers only pass arguments `>= 1/2`.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}
