use super::kummer::{kummer_m, KummerParams};
use crate::error::{Error, Result};

/// Generalised Laguerre polynomial `L_m^(alpha)(x)` by the three-term
/// recurrence `(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}`.
pub fn laguerre(m: usize, alpha: f64, x: f64) -> Result<f64> {
    if !alpha.is_finite() || !x.is_finite() {
        return Err(Error::domain("non-finite Laguerre arguments"));
    }
    let mut prev = 1.0;
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `C(m + alpha, m) M(-m, alpha + 1, x)`, the hypergeometric form of the
/// same polynomial.
pub fn laguerre_via_kummer(m: usize, alpha: f64, x: f64) -> Result<f64> {
    let binom: f64 = (1..=m).map(|j| (alpha + j as f64) / j as f64).product();
    Ok(binom * kummer_m(KummerParams::new(-(m as f64), alpha + 1.0, x))?)
}
