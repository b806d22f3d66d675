use rayon::prelude::*;
use std::io::{self, Write};

use super::config::{InitialUnits, SimConfig};
use super::continuous::play_continuous;
use super::rng::replication_rng;
use crate::error::Result;
use crate::format::sig15;

/// Replicated residual ruin times for one critical configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSampleSet {
    pub config: SimConfig,
    pub units: InitialUnits,
    /// `S_N = N^(1/4) (T - tau_N)`.
    pub s_values: Vec<f64>,
    /// `S_N` with the event count standing in for time: `N^(1/4) (T - K/N)`.
    pub s_hat_values: Vec<f64>,
    /// `R_N = 3 T^-3 S_N^4`.
    pub r_values: Vec<f64>,
}

impl ResidualSampleSet {
    pub fn len(&self) -> usize {
        self.s_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_values.is_empty()
    }

    /// CSV `rep,s,s_hat,r`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "rep,s,s_hat,r")?;
        for i in 0..self.len() {
            writeln!(
                out,
                "{},{},{},{}",
                i,
                sig15(self.s_values[i]),
                sig15(self.s_hat_values[i]),
                sig15(self.r_values[i])
            )?;
        }
        Ok(())
    }
}

/// Samples `S_N`, its count proxy and `R_N` over `config.replications`
/// independent runs. Refuses non-critical configurations. `T` is taken as
/// `x0 + y0` exactly.
pub fn sample_residuals(config: &SimConfig) -> Result<ResidualSampleSet> {
    let units = config.require_critical()?;
    let total = config.total();
    let n = config.n_scale as f64;
    let scale = n.powf(0.25);
    let draws: Vec<(f64, f64)> = (0..config.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(config.seed, rep);
            let t = play_continuous(units, &[], &mut rng)?;
            Ok((scale * (total - t.tau_n), scale * (total - t.tau_hat)))
        })
        .collect::<Result<_>>()?;
    let (s_values, s_hat_values): (Vec<f64>, Vec<f64>) = draws.into_iter().unzip();
    let r_values = s_values.iter().map(|s| 3.0 * s.powi(4) / total.powi(3)).collect();
    Ok(ResidualSampleSet {
        config: *config,
        units,
        s_values,
        s_hat_values,
        r_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn refuses_non_critical() {
        let cfg = SimConfig::new(10_000, 0.6, 0.4, 0.0).with_replications(3);
        assert!(matches!(sample_residuals(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn positive_finite_and_deterministic() {
        let cfg = SimConfig::critical(400, 1.0, 0.0).with_seed(9).with_replications(64);
        let a = sample_residuals(&cfg).unwrap();
        assert_eq!(a.len(), 64);
        assert!(a.r_values.iter().all(|r| r.is_finite() && *r > 0.0));
        assert!(a.s_hat_values.iter().all(|s| *s > 0.0));
        let b = sample_residuals(&cfg).unwrap();
        assert_eq!(a, b);
    }
}
