use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};
use rayon::prelude::*;
use std::io::{self, Write};

use super::config::{InitialUnits, SimConfig};
use super::discrete::{run_chain, Army};
use super::rng::replication_rng;
use crate::error::{Error, Result};
use crate::format::sig15;

/// One scaled path of the Poisson-clock process, observed on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledTrajectory {
    pub n_scale: u64,
    pub initial: InitialUnits,
    /// Grid times reached before ruin.
    pub times: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `sqrt(N) (x - y)`.
    pub z: Vec<f64>,
    /// Rounds played before ruin, `K`.
    pub event_count: u64,
    /// Macroscopic ruin time `tau_N`.
    pub tau_n: f64,
    /// Event-count proxy `K / N` for the elapsed time.
    pub tau_hat: f64,
    pub ruined: Army,
    /// Unit counts `(a, b)` at ruin.
    pub final_units: (u64, u64),
    /// Grid times at or beyond `tau_N`, which were not sampled.
    pub truncated: usize,
}

impl ScaledTrajectory {
    /// Last sampled grid time, if any.
    pub fn horizon(&self) -> Option<f64> {
        self.times.last().copied()
    }

    /// `(x, y, z)` at grid index `i` for the process stopped at ruin: the
    /// sampled value before `tau_N`, the ruin state after it.
    pub fn stopped_state(&self, i: usize) -> (f64, f64, f64) {
        if i < self.times.len() {
            (self.x[i], self.y[i], self.z[i])
        } else {
            let n = self.n_scale as f64;
            let (a, b) = self.final_units;
            let (x, y) = (a as f64 / n, b as f64 / n);
            (x, y, n.sqrt() * (x - y))
        }
    }

    /// CSV `t,x,y,z` of the sampled grid points.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,x,y,z")?;
        for i in 0..self.times.len() {
            writeln!(
                out,
                "{},{},{},{}",
                sig15(self.times[i]),
                sig15(self.x[i]),
                sig15(self.y[i]),
                sig15(self.z[i])
            )?;
        }
        Ok(())
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::domain("grid times must be finite and >= 0"));
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("grid times must be non-decreasing"));
    }
    Ok(())
}

/// Runs the continuous-time process from `initial` to ruin.
///
/// Without a grid only the embedded chain is simulated and the ruin time is
/// drawn as `Gamma(K, 1) / N`, the law of the sum of `K` unit exponentials.
/// With a grid every inter-event exponential is drawn so the path can be
/// read off at the grid times; grid points at or past `tau_N` are counted in
/// `truncated`.
pub fn play_continuous<R: Rng + ?Sized>(initial: InitialUnits, grid: &[f64], rng: &mut R) -> Result<ScaledTrajectory> {
    check_grid(grid)?;
    let n = initial.n_scale as f64;
    let sqrt_n = n.sqrt();
    let mut traj = ScaledTrajectory {
        n_scale: initial.n_scale,
        initial,
        times: Vec::with_capacity(grid.len()),
        x: Vec::with_capacity(grid.len()),
        y: Vec::with_capacity(grid.len()),
        z: Vec::with_capacity(grid.len()),
        event_count: 0,
        tau_n: 0.0,
        tau_hat: 0.0,
        ruined: Army::A,
        final_units: (0, 0),
        truncated: 0,
    };

    let outcome;
    let tau_n;
    if grid.is_empty() {
        outcome = run_chain(initial.a, initial.b, true, rng, |_, _| {});
        let shape = outcome.events as f64;
        let clock = Gamma::new(shape, 1.0)
            .map_err(|e| Error::domain(format!("Gamma({shape}, 1): {e}")))?
            .sample(rng);
        tau_n = clock / n;
    } else {
        let (mut a, mut b) = (initial.a, initial.b);
        let mut t = 0.0;
        let mut next_grid = 0;
        let mut record = |upto: f64, a: u64, b: u64, traj: &mut ScaledTrajectory| {
            while next_grid < grid.len() && grid[next_grid] < upto {
                let (x, y) = (a as f64 / n, b as f64 / n);
                traj.times.push(grid[next_grid]);
                traj.x.push(x);
                traj.y.push(y);
                traj.z.push(sqrt_n * (x - y));
                next_grid += 1;
            }
        };
        let mut events = 0u64;
        while a > 0 && b > 0 {
            let wait: f64 = Exp1.sample(rng);
            let t_next = t + wait / n;
            record(t_next, a, b, &mut traj);
            if rng.random_range(0..a + b) < a {
                b -= 1;
            } else {
                a -= 1;
            }
            events += 1;
            t = t_next;
        }
        outcome = super::discrete::GameOutcome {
            ruined: if a == 0 { Army::A } else { Army::B },
            events,
            survivor_units: a.max(b),
        };
        tau_n = t;
        traj.truncated = grid.len() - next_grid;
    }

    traj.event_count = outcome.events;
    traj.tau_n = tau_n;
    traj.tau_hat = outcome.events as f64 / n;
    traj.ruined = outcome.ruined;
    traj.final_units = match outcome.ruined {
        Army::A => (0, outcome.survivor_units),
        Army::B => (outcome.survivor_units, 0),
    };
    Ok(traj)
}

/// `config.replications` independent trajectories in replication order,
/// computed in parallel on the current rayon pool.
pub fn run_replications(config: &SimConfig, grid: &[f64]) -> Result<Vec<ScaledTrajectory>> {
    let units = config.initial_units()?;
    check_grid(grid)?;
    (0..config.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(config.seed, rep);
            play_continuous(units, grid, &mut rng)
        })
        .collect()
}
