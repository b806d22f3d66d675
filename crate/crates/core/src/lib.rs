//! Exact ruin probabilities, jump-process simulators, the limiting diffusion
//! and the special functions behind the residual ruin-time law of a
//! two-army attrition game.
//!
//! Two armies start with `m` and `n` units. Each round army A wins with
//! probability `m / (m + n)`; the loser discards one unit. The crate is split
//! into four layers:
//!
//! - [`exact`]: ruin probabilities `p(m, n)` (proportional game) and `q(m, n)`
//!   (fair-coin game) by dynamic programming, with exact-rational and
//!   generating-function oracles.
//! - [`specfn`]: Kummer `M`, the `h_rho` family, Laguerre polynomials, the
//!   non-central chi-squared law with one degree of freedom, and the exact
//!   moments of the limiting residual time.
//! - [`simulate`]: the embedded chain, the Poisson-clock process at scale `N`,
//!   residual-time sampling and an exact sampler of the limiting diffusion.
//! - [`analysis`]: empirical CDFs, KS distances and one experiment per
//!   limit theorem, each producing a serialisable [`analysis::ConvergenceReport`].

pub mod analysis;
pub mod error;
pub mod exact;
pub mod format;
pub mod simulate;
pub mod specfn;

pub use analysis::{ConvergenceReport, EmpiricalCDF};
pub use error::{Error, Result};
pub use exact::{BigRational, ProbabilityTable, RuinState, TableKind};
pub use simulate::{Army, DiffusionPath, ResidualSampleSet, ScaledTrajectory, SimConfig};
pub use specfn::{HRhoFunction, KummerParams, NoncentralChiSq1, SMomentSpec};
