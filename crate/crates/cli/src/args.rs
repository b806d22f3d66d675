use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use ruinlab::simulate::DEFAULT_SEED;
use ruinlab::TableKind;

#[derive(Debug, Parser)]
#[command(
    name = "ruinlab",
    version,
    about = "Exact ruin probabilities, scaled simulations and limit-law checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Base seed; falls back to RUINLAB_SEED, then to the command default
    /// (20240601 for simulate, the pinned experiment seed for verify)
    #[arg(long, global = true, env = "RUINLAB_SEED")]
    pub seed: Option<u64>,
    /// Derive the seed from the clock instead; the seed used is reported
    #[arg(long, global = true, conflicts_with = "seed")]
    pub fresh_seed: bool,
    /// Worker threads [default: hardware parallelism]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for output files [default: standard output where possible]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format [default: text for exact and specfn, csv for table and simulate, json for verify]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Record wall-clock runtime in reports (makes them non-reproducible)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Proportional,
    Simple,
}

impl From<Kind> for TableKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Proportional => TableKind::Proportional,
            Kind::Simple => TableKind::Simple,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single ruin probability, with the exact rational when m + n <= 60
    Exact(ExactArgs),
    /// Reference table of p and q with complements, or a full table export
    Table(TableArgs),
    /// Scaled simulations: residual ruin times (default) or trajectories
    Simulate(SimulateArgs),
    /// Run a named verification experiment; exit 0 iff it passes
    Verify(VerifyArgs),
    /// Special-function evaluation
    Specfn {
        #[command(subcommand)]
        command: SpecfnCommand,
    },
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// Units of the army whose ruin probability is reported
    #[arg(long)]
    pub m: usize,
    /// Units of the opponent
    #[arg(long)]
    pub n: usize,
    /// Game variant
    #[arg(long, value_enum, default_value = "proportional")]
    pub kind: Kind,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Rows as m:n pairs, comma separated [default: the 15 reference rows]
    #[arg(long, value_delimiter = ',', conflicts_with = "full")]
    pub rows: Vec<String>,
    /// Export every (m, n) with 1 <= m + n <= max-total
    #[arg(long)]
    pub full: bool,
    /// Largest m + n of a full export
    #[arg(long, default_value_t = 2000, requires = "full")]
    pub max_total: usize,
    /// Variant of a full export
    #[arg(long, value_enum, default_value = "proportional", requires = "full")]
    pub kind: Kind,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scale N
    #[arg(long, default_value_t = 10_000)]
    pub n_scale: u64,
    /// Macroscopic fortune of army A
    #[arg(long, default_value_t = 0.5)]
    pub x0: f64,
    /// Macroscopic fortune of army B
    #[arg(long, default_value_t = 0.5)]
    pub y0: f64,
    /// Scaled initial difference
    #[arg(long, default_value_t = 0.0)]
    pub z0: f64,
    /// Independent replications
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    /// Residual ruin times (requires a critical configuration)
    #[arg(long, conflicts_with = "trajectory")]
    pub residuals: bool,
    /// Trajectories on a time grid, one CSV per replication
    #[arg(long)]
    pub trajectory: bool,
    /// Grid spacing of trajectory output
    #[arg(long, default_value_t = 0.01)]
    pub grid_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    CltProportional,
    CltSimple,
    Fluid,
    Winner,
    Diffusion,
    Residual,
    Stopping,
    Proxy,
    Eulerian,
    Inequality,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Experiment to run
    #[arg(value_enum)]
    pub experiment: Experiment,
    /// Scale ladder, comma separated [default: pinned per experiment]
    #[arg(long, value_delimiter = ',')]
    pub ladder: Vec<u64>,
    /// CLT evaluation points [default: -2,-1,0,1,2]
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x_grid: Vec<f64>,
    /// Observation times for fluid and diffusion [default: pinned per experiment]
    #[arg(long, value_delimiter = ',')]
    pub t_grid: Vec<f64>,
    /// Scale N for single-scale experiments [default: 10000]
    #[arg(long)]
    pub n_scale: Option<u64>,
    /// Initial A fortune for fluid and winner [default: 0.6 fluid, 0.4 winner]
    #[arg(long)]
    pub x0: Option<f64>,
    /// Initial B fortune for fluid and winner [default: 0.4 fluid, 0.6 winner]
    #[arg(long)]
    pub y0: Option<f64>,
    /// Total fortune T of critical experiments
    #[arg(long, default_value_t = 1.0)]
    pub total: f64,
    /// Scaled initial difference of critical experiments
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub z0: f64,
    /// Replications [default: 200 fluid, 2000 otherwise]
    #[arg(long)]
    pub reps: Option<usize>,
    /// Exponents for the stopping experiment [default: 3]
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<f64>,
    /// Largest m + n of the Eulerian check
    #[arg(long = "max", default_value_t = 12)]
    pub max_total: usize,
    /// Random instances of the drift inequality
    #[arg(long, default_value_t = 100_000)]
    pub draws: usize,
}

#[derive(Debug, Subcommand)]
pub enum SpecfnCommand {
    /// h_rho(x) = M(-rho/3, 1/2, -3x), or its k-th derivative
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        rho: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Derivative order
        #[arg(long, default_value_t = 0)]
        derivative: usize,
    },
}

pub fn resolve_seed(common: &Common, fallback: u64) -> u64 {
    if common.fresh_seed {
        use std::time::{SystemTime, UNIX_EPOCH};
        let d = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default();
        return d.as_nanos() as u64;
    }
    common.seed.unwrap_or(fallback)
}

pub const SIMULATE_SEED: u64 = DEFAULT_SEED;
