use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use ruinlab::analysis::{self, protocol as pr, ConvergenceReport};
use ruinlab::exact::{evaluate_points, p_explicit, EXPLICIT_MAX_TOTAL};
use ruinlab::format::{round_json, sig15};
use ruinlab::simulate::{run_replications, sample_residuals, SimConfig};
use ruinlab::specfn::HRhoFunction;
use ruinlab::{Error, ProbabilityTable, RuinState, TableKind};

use crate::args::{resolve_seed, Cli, Command, Experiment, Format, SpecfnCommand, VerifyArgs, SIMULATE_SEED};

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or a rejected configuration: exit 2.
    Usage(String),
    Other(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Other(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Other(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(format!("i/o: {e}"))
    }
}

type Outcome = Result<bool, Failure>;

pub fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Exact(a) => exact(cli, a.m, a.n, a.kind.into()),
        Command::Table(a) => {
            if a.full {
                table_full(cli, a.kind.into(), a.max_total)
            } else {
                table(cli, &a.rows)
            }
        }
        Command::Simulate(a) => simulate(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Specfn { command } => match command {
            SpecfnCommand::Eval { rho, x, derivative } => specfn_eval(cli, *rho, *x, *derivative),
        },
    }
}

/// Writes to `<out>/<name>` when `--out` is set, else to stdout.
fn emit(cli: &Cli, name: &str, body: &[u8]) -> Result<(), Failure> {
    match &cli.common.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(name), body)?;
        }
        None => io::stdout().write_all(body)?,
    }
    Ok(())
}

fn json_text(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_json(value)).expect("json");
    s.push('\n');
    s
}

fn exact(cli: &Cli, m: usize, n: usize, kind: TableKind) -> Outcome {
    if m == 0 && n == 0 {
        return Err(Failure::Other("(0, 0) is not a valid state".into()));
    }
    let value = evaluate_points(kind, &[RuinState::new(m, n)])?[0];
    let rational = match kind {
        TableKind::Proportional if m + n <= EXPLICIT_MAX_TOTAL => Some(p_explicit(m, n)?.to_string()),
        _ => None,
    };
    let body = match cli.common.format {
        Some(Format::Json) => json_text(serde_json::json!({
            "m": m, "n": n, "kind": kind, "value": value, "rational": rational,
        })),
        Some(Format::Csv) => format!("m,n,{}\n{m},{n},{}\n", kind.column(), sig15(value)),
        None => match rational {
            Some(r) => format!("{}\n{r}\n", sig15(value)),
            None => format!("{}\n", sig15(value)),
        },
    };
    emit(cli, "exact.txt", body.as_bytes())?;
    Ok(true)
}

fn parse_rows(rows: &[String]) -> Result<Vec<RuinState>, Failure> {
    rows.iter()
        .map(|r| {
            let (m, n) = r
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("row '{r}' is not m:n")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("row '{r}' is not m:n")))
            };
            let state = RuinState::new(parse(m)?, parse(n)?);
            if state.total() == 0 {
                return Err(Failure::Usage("row 0:0 is not a valid state".into()));
            }
            Ok(state)
        })
        .collect()
}

fn table(cli: &Cli, rows: &[String]) -> Outcome {
    let states = if rows.is_empty() {
        pr::TABLE_ONE.iter().map(|&(m, n, _, _)| RuinState::new(m, n)).collect()
    } else {
        parse_rows(rows)?
    };
    let p = evaluate_points(TableKind::Proportional, &states)?;
    let q = evaluate_points(TableKind::Simple, &states)?;
    let body = match cli.common.format {
        Some(Format::Json) => {
            let rows: Vec<_> = states
                .iter()
                .zip(p.iter().zip(&q))
                .map(|(s, (p, q))| {
                    serde_json::json!({ "total": s.total(), "m": s.m, "n": s.n,
                        "p": p, "1-p": 1.0 - p, "q": q, "1-q": 1.0 - q })
                })
                .collect();
            json_text(serde_json::Value::Array(rows))
        }
        _ => {
            let mut s = String::from("total,m,n,p,1-p,q,1-q\n");
            for (st, (p, q)) in states.iter().zip(p.iter().zip(&q)) {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    st.total(),
                    st.m,
                    st.n,
                    sig15(*p),
                    sig15(1.0 - p),
                    sig15(*q),
                    sig15(1.0 - q)
                ));
            }
            s
        }
    };
    emit(cli, "table.csv", body.as_bytes())?;
    Ok(true)
}

fn table_full(cli: &Cli, kind: TableKind, max_total: usize) -> Outcome {
    let table = ProbabilityTable::build(kind, max_total)?;
    match &cli.common.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let file = File::create(dir.join(format!("table_{}.csv", kind.column())))?;
            let mut w = BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            table.write_csv(&mut w)?;
            w.flush()?;
        }
    }
    Ok(true)
}

fn write_file(dir: &Path, name: &str, f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<(), Failure> {
    let mut w = BufWriter::new(File::create(dir.join(name))?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

fn simulate(cli: &Cli, a: &crate::args::SimulateArgs) -> Outcome {
    let seed = resolve_seed(&cli.common, SIMULATE_SEED);
    let config = SimConfig::new(a.n_scale, a.x0, a.y0, a.z0)
        .with_seed(seed)
        .with_replications(a.reps);
    let dir = cli.common.out.clone().unwrap_or_else(|| ".".into());
    fs::create_dir_all(&dir)?;
    let sidecar = json_text(config.sidecar()?);
    if a.trajectory {
        if !(a.grid_step > 0.0 && a.grid_step.is_finite()) {
            return Err(Failure::Usage("--grid-step must be positive".into()));
        }
        let total = config.total();
        let steps = (total / a.grid_step).ceil() as usize;
        let grid: Vec<f64> = (0..steps)
            .map(|i| i as f64 * a.grid_step)
            .filter(|t| *t < total)
            .collect();
        let paths = run_replications(&config, &grid)?;
        for (rep, p) in paths.iter().enumerate() {
            write_file(&dir, &format!("trajectory_{rep}.csv"), |w| p.write_csv(w))?;
        }
        fs::write(dir.join("trajectory.json"), sidecar)?;
    } else {
        let samples = sample_residuals(&config)?;
        write_file(&dir, "residuals.csv", |w| samples.write_csv(w))?;
        fs::write(dir.join("residuals.json"), sidecar)?;
    }
    if cli.common.fresh_seed {
        eprintln!("seed: {seed}");
    }
    Ok(true)
}

fn or_default<T: Clone>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

fn critical_config(a: &VerifyArgs, seed: u64, n_default: u64, reps_default: usize) -> SimConfig {
    SimConfig::critical(a.n_scale.unwrap_or(n_default), a.total, a.z0)
        .with_seed(seed)
        .with_replications(a.reps.unwrap_or(reps_default))
}

fn run_experiment(cli: &Cli, a: &VerifyArgs) -> Result<ConvergenceReport, Failure> {
    let seed = |pinned| resolve_seed(&cli.common, pinned);
    let report = match a.experiment {
        Experiment::CltProportional | Experiment::CltSimple => {
            let default: Vec<u64> = pr::CLT_LADDER.iter().map(|m| *m as u64).collect();
            let ladder: Vec<usize> = or_default(&a.ladder, &default).iter().map(|m| *m as usize).collect();
            let x_grid = or_default(&a.x_grid, &pr::CLT_X_GRID);
            if a.experiment == Experiment::CltProportional {
                analysis::verify_clt_proportional(&ladder, &x_grid)?
            } else {
                analysis::verify_clt_simple(&ladder, &x_grid)?
            }
        }
        Experiment::Fluid => {
            let cfg = SimConfig::new(1, a.x0.unwrap_or(pr::FLUID_X0), a.y0.unwrap_or(pr::FLUID_Y0), 0.0)
                .with_seed(seed(pr::FLUID_SEED))
                .with_replications(a.reps.unwrap_or(pr::FLUID_REPLICATIONS));
            let grid = if a.t_grid.is_empty() {
                pr::fluid_grid()
            } else {
                a.t_grid.clone()
            };
            analysis::verify_fluid(&cfg, &or_default(&a.ladder, &pr::FLUID_LADDER), &grid)?
        }
        Experiment::Winner => analysis::verify_winner_degenerate(
            a.x0.unwrap_or(0.4),
            a.y0.unwrap_or(0.6),
            &or_default(&a.ladder, &pr::WINNER_LADDER),
        )?,
        Experiment::Diffusion => {
            let cfg = critical_config(a, seed(pr::DIFFUSION_SEED), pr::DIFFUSION_N, pr::DIFFUSION_REPLICATIONS);
            analysis::verify_diffusion(&cfg, &or_default(&a.t_grid, &pr::DIFFUSION_TIMES))?
        }
        Experiment::Residual => {
            let cfg = critical_config(a, seed(pr::RESIDUAL_SEED), pr::RESIDUAL_N, pr::RESIDUAL_REPLICATIONS);
            analysis::verify_residual_law(&cfg)?
        }
        Experiment::Stopping => {
            let cfg = critical_config(a, seed(pr::STOPPING_SEED), 1, pr::STOPPING_REPLICATIONS);
            analysis::verify_optional_stopping(
                &cfg,
                &or_default(&a.ladder, &pr::STOPPING_LADDER),
                &or_default(&a.rho, &pr::STOPPING_RHOS),
            )?
        }
        Experiment::Proxy => {
            let cfg = critical_config(a, seed(pr::PROXY_SEED), 1, pr::PROXY_REPLICATIONS);
            analysis::verify_count_proxy_bound(&cfg, &or_default(&a.ladder, &pr::PROXY_LADDER))?
        }
        Experiment::Eulerian => analysis::verify_eulerian(a.max_total)?,
        Experiment::Inequality => analysis::verify_drift_inequality(a.draws, seed(pr::INEQUALITY_SEED))?,
    };
    Ok(report)
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let mut report = run_experiment(cli, a)?;
    if let Some(t) = report.runtime_seconds.filter(|_| !cli.common.timing) {
        eprintln!("{}: {:.2} s", report.name, t);
        report.runtime_seconds = None;
    }
    let json = report.to_json();
    let mut plot = Vec::new();
    report.write_plot_csv(&mut plot)?;
    match (&cli.common.out, cli.common.format) {
        (Some(dir), _) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(format!("{}.json", report.name)), &json)?;
            fs::write(dir.join(format!("{}_plot.csv", report.name)), &plot)?;
        }
        (None, Some(Format::Csv)) => io::stdout().write_all(&plot)?,
        (None, _) => io::stdout().write_all(json.as_bytes())?,
    }
    eprintln!("{}: {}", report.name, if report.passed() { "pass" } else { "fail" });
    Ok(report.passed())
}

fn specfn_eval(cli: &Cli, rho: f64, x: f64, derivative: usize) -> Outcome {
    let h = HRhoFunction::new(rho)?;
    let value = h.derivative(derivative, x)?;
    let body = match cli.common.format {
        Some(Format::Json) => json_text(serde_json::json!({
            "rho": rho, "x": x, "derivative": derivative, "value": value,
        })),
        Some(Format::Csv) => format!(
            "rho,x,derivative,value\n{},{},{derivative},{}\n",
            sig15(rho),
            sig15(x),
            sig15(value)
        ),
        None => format!("{}\n", sig15(value)),
    };
    emit(cli, "specfn.txt", body.as_bytes())?;
    Ok(true)
}
