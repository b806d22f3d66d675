use crate::error::{Error, Result};

/// `q(m, n) = sum_{k=0}^{n-1} C(m+k-1, k) / 2^(m+k)` for the fair-coin game.
///
/// Terms are carried as logarithms (`t_{k+1} = t_k (m+k) / (2(k+1))`) and
/// combined with a running log-sum-exp, so `2^-m` never underflows.
pub fn q_explicit(m: usize, n: usize) -> Result<f64> {
    if m + n == 0 {
        return Err(Error::domain("q(0, 0) is not a game in progress"));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if m == 0 {
        return Ok(1.0);
    }
    let ln2 = std::f64::consts::LN_2;
    let mut ln_term = -(m as f64) * ln2;
    // log of the partial sum, kept as (max, scaled sum)
    let mut ln_max = ln_term;
    let mut scaled = 1.0;
    for k in 0..n - 1 {
        ln_term += ((m + k) as f64 / (k + 1) as f64).ln() - ln2;
        if ln_term > ln_max {
            scaled = scaled * (ln_max - ln_term).exp() + 1.0;
            ln_max = ln_term;
        } else {
            scaled += (ln_term - ln_max).exp();
        }
    }
    Ok((ln_max + scaled.ln()).exp().min(1.0))
}
