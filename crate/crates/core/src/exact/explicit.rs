use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// Largest `m + n` accepted by [`p_explicit`]. Beyond this the alternating
/// sum is only a curiosity; use the DP table.
pub const EXPLICIT_MAX_TOTAL: usize = 60;

/// `p(m, n)` from the alternating sum
/// `sum_{j=0}^{n} (-1)^j / j! * (n - j)^(m+n) / (m + n - j)!`,
/// evaluated exactly. Over the common denominator `(m+n)!` the sum becomes
/// `sum_j (-1)^j C(m+n, j) (n - j)^(m+n)`, an integer.
pub fn p_explicit(m: usize, n: usize) -> Result<BigRational> {
    let total = m + n;
    if total == 0 {
        return Err(Error::domain("p(0, 0) is not a game in progress"));
    }
    if total > EXPLICIT_MAX_TOTAL {
        return Err(Error::Regime(format!(
            "m + n = {total} exceeds {EXPLICIT_MAX_TOTAL}; use the DP table (p_recurrence)"
        )));
    }
    let mut numerator = BigInt::zero();
    let mut binom = BigInt::one();
    for j in 0..=n {
        if j > 0 {
            binom = binom * BigInt::from(total - j + 1) / BigInt::from(j);
        }
        let power = num_traits::pow(BigInt::from(n - j), total);
        let term = &binom * power;
        if j % 2 == 0 {
            numerator += term;
        } else {
            numerator -= term;
        }
    }
    let factorial: BigInt = (1..=total).map(BigInt::from).product();
    Ok(BigRational::new(numerator, factorial))
}
