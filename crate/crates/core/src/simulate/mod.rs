//! Monte Carlo simulators for the attrition game.
//!
//! The microscopic process holds integer unit counts `(X, Y)`. At scale `N`
//! the macroscopic fortunes are `x = X / N`, `y = Y / N`, time runs `N` times
//! faster, and events arrive at the ticks of a rate-`N` Poisson clock. The
//! order of wins and losses is the embedded chain, identical to the
//! discrete-time game.
//!
//! Replication `i` of a run draws from its own ChaCha8 stream derived from
//! `(seed, i)` (see [`replication_rng`]), so results do not depend on how
//! replications are scheduled across threads.

mod config;
mod continuous;
mod diffusion;
mod discrete;
mod drift;
mod residual;
mod rng;

pub use config::{InitialUnits, SimConfig, DEFAULT_SEED};
pub use continuous::{play_continuous, run_replications, ScaledTrajectory};
pub use diffusion::{diffusion_mean, diffusion_variance, sample_diffusion, DiffusionPath};
pub use discrete::{play_discrete, play_simple, Army, GameOutcome};
pub use drift::{drift_inequality, h_functional};
pub use residual::{sample_residuals, ResidualSampleSet};
pub use rng::{replication_rng, SimRng};
