use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

/// A path of the limiting diffusion `dz = z / (T - t) dt + dW` on a grid
/// strictly before the blow-up time `T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffusionPath {
    pub total: f64,
    pub z0: f64,
    pub times: Vec<f64>,
    pub z: Vec<f64>,
}

/// `E[z_t] = z0 / (1 - t/T)`.
pub fn diffusion_mean(total: f64, z0: f64, t: f64) -> f64 {
    z0 / (1.0 - t / total)
}

/// `Var[z_t] = (1 - t/T)^-2 int_0^t (1 - s/T)^2 ds`
/// `= (1 - t/T)^-2 (T/3) (1 - (1 - t/T)^3)`.
pub fn diffusion_variance(total: f64, t: f64) -> f64 {
    let r = 1.0 - t / total;
    (total / 3.0) * (1.0 - r * r * r) / (r * r)
}

/// Samples the diffusion exactly at `grid`: `z_t = (1 - t/T)^-1 [z0 + I_t]`
/// where `I_t = int_0^t (1 - s/T) dW_s` has independent Gaussian increments
/// of variance `(T/3) [(1 - t0/T)^3 - (1 - t1/T)^3]`.
pub fn sample_diffusion<R: Rng + ?Sized>(total: f64, z0: f64, grid: &[f64], rng: &mut R) -> Result<DiffusionPath> {
    if !(total.is_finite() && total > 0.0) || !z0.is_finite() {
        return Err(Error::domain("diffusion needs T > 0 and finite z0"));
    }
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) || grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("grid must be sorted, finite and >= 0"));
    }
    if grid.iter().any(|t| *t >= total) {
        return Err(Error::domain(format!("grid reaches the blow-up time T = {total}")));
    }
    let cube = |t: f64| {
        let r = 1.0 - t / total;
        r * r * r
    };
    let mut integral = 0.0;
    let mut last = 0.0;
    let mut z = Vec::with_capacity(grid.len());
    for &t in grid {
        let var = (total / 3.0) * (cube(last) - cube(t));
        if var > 0.0 {
            let g: f64 = StandardNormal.sample(rng);
            integral += var.sqrt() * g;
        }
        z.push((z0 + integral) / (1.0 - t / total));
        last = t;
    }
    Ok(DiffusionPath {
        total,
        z0,
        times: grid.to_vec(),
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::replication_rng;

    #[test]
    fn closed_forms() {
        assert!((diffusion_variance(1.0, 0.5) - 7.0 / 6.0).abs() < 1e-14);
        assert_eq!(diffusion_variance(1.0, 0.0), 0.0);
        assert_eq!(diffusion_mean(1.0, 1.0, 0.5), 2.0);
    }

    #[test]
    fn starts_at_z0() {
        let mut rng = replication_rng(5, 0);
        let p = sample_diffusion(1.0, 0.7, &[0.0, 0.3], &mut rng).unwrap();
        assert_eq!(p.z[0], 0.7);
    }

    #[test]
    fn blow_up_rejected() {
        let mut rng = replication_rng(5, 0);
        assert!(sample_diffusion(1.0, 0.0, &[0.2, 1.0], &mut rng).is_err());
        assert!(sample_diffusion(0.0, 0.0, &[0.2], &mut rng).is_err());
    }
}
