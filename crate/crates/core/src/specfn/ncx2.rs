use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_lr;

use super::ln_gamma;
use crate::error::{Error, Result};

const POISSON_TAIL: f64 = 1e-12;
const MAX_POISSON_TERMS: usize = 10_000;

/// Non-central chi-squared law with one degree of freedom and
/// non-centrality `lambda`: the law of `(Z + sqrt(lambda))^2`, `Z ~ N(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoncentralChiSq1 {
    lambda: f64,
}

impl NoncentralChiSq1 {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::domain(format!(
                "non-centrality must be finite and >= 0, got {lambda}"
            )));
        }
        Ok(NoncentralChiSq1 { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mean(&self) -> f64 {
        1.0 + self.lambda
    }

    pub fn variance(&self) -> f64 {
        2.0 * (1.0 + 2.0 * self.lambda)
    }

    /// Poisson mixture `sum_j Pois(j; lambda/2) P(chi2_{1+2j} <= x)`,
    /// stopped once the unused Poisson mass is below `1e-12`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::domain(format!("ncx2 CDF needs x >= 0, got {x}")));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        if x.is_infinite() {
            return Ok(1.0);
        }
        let half = 0.5 * self.lambda;
        if half == 0.0 {
            return Ok(gamma_lr(0.5, 0.5 * x));
        }
        let mut acc = 0.0;
        let mut mass = 0.0;
        for j in 0..MAX_POISSON_TERMS {
            let jf = j as f64;
            let weight = (-half + jf * half.ln() - ln_gamma(jf + 1.0)).exp();
            acc += weight * gamma_lr(0.5 + jf, 0.5 * x);
            mass += weight;
            if jf > half && 1.0 - mass < POISSON_TAIL {
                return Ok(acc.clamp(0.0, 1.0));
            }
        }
        Err(Error::Precision(format!(
            "ncx2 Poisson mixture for lambda = {} did not converge",
            self.lambda
        )))
    }

    /// Raw moment `E[X^m]` from the cumulants
    /// `kappa_j = 2^(j-1) (j-1)! (1 + j lambda)` via
    /// `mu_m = sum_{j=1}^m C(m-1, j-1) kappa_j mu_{m-j}`.
    pub fn moment(&self, m: usize) -> Result<f64> {
        if m == 0 {
            return Err(Error::domain("moment order must be >= 1"));
        }
        let kappa: Vec<f64> = (1..=m)
            .scan(1.0, |fact, j| {
                // fact = (j-1)!
                let k = 2f64.powi(j as i32 - 1) * *fact * (1.0 + j as f64 * self.lambda);
                *fact *= j as f64;
                Some(k)
            })
            .collect();
        let mut mu = vec![1.0];
        for order in 1..=m {
            let mut binom = 1.0; // C(order-1, j-1)
            let mut v = 0.0;
            for j in 1..=order {
                v += binom * kappa[j - 1] * mu[order - j];
                binom = binom * (order - j) as f64 / j as f64;
            }
            mu.push(v);
        }
        Ok(mu[m])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_cdf_is_folded_normal() {
        let d = NoncentralChiSq1::new(0.0).unwrap();
        // P(chi2_1 <= 1) = 2 Phi(1) - 1
        assert!((d.cdf(1.0).unwrap() - 0.682_689_492_137_085_9).abs() < 1e-12);
        assert_eq!(d.cdf(0.0).unwrap(), 0.0);
        assert!(d.cdf(-1.0).is_err());
    }

    #[test]
    fn moments() {
        let d = NoncentralChiSq1::new(0.0).unwrap();
        assert!((d.moment(1).unwrap() - 1.0).abs() < 1e-15);
        assert!((d.moment(2).unwrap() - 3.0).abs() < 1e-14);
        assert!((d.moment(3).unwrap() - 15.0).abs() < 1e-13);
        let d = NoncentralChiSq1::new(3.0).unwrap();
        assert!((d.moment(1).unwrap() - 4.0).abs() < 1e-14);
        let var = d.moment(2).unwrap() - 16.0;
        assert!((var - d.variance()).abs() < 1e-12);
    }

    #[test]
    fn cdf_monotone_to_one() {
        let d = NoncentralChiSq1::new(3.0).unwrap();
        let mut last = 0.0;
        for i in 1..400 {
            let v = d.cdf(i as f64 * 0.1).unwrap();
            assert!(v >= last);
            last = v;
        }
        assert!(d.cdf(200.0).unwrap() > 1.0 - 1e-12);
    }

    /// `Phi(t) = 1/2 + phi(t) sum_n t^(2n+1) / (2n+1)!!`, fine for |t| <= 6.
    fn phi_series(t: f64) -> f64 {
        let mut term = t;
        let mut sum = t;
        for n in 1..400 {
            term *= t * t / (2 * n + 1) as f64;
            sum += term;
        }
        0.5 + (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt() * sum
    }

    #[test]
    fn noncentral_cdf_matches_shifted_normal() {
        // P((Z + mu)^2 <= x) = Phi(sqrt x - mu) - Phi(-sqrt x - mu)
        let d = NoncentralChiSq1::new(3.0).unwrap();
        let mu = 3f64.sqrt();
        for x in [0.2_f64, 1.0, 4.0, 9.5] {
            let expect = phi_series(x.sqrt() - mu) - phi_series(-x.sqrt() - mu);
            assert!((d.cdf(x).unwrap() - expect).abs() < 1e-13, "{x}");
        }
    }
}
