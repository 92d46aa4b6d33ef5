use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netcap_core::gains::{self, hop_gain_report, table1_report};
use netcap_core::sweep::{Coupling, DensityShape, HopShape, SweepAxis};
use netcap_core::{CatalogFamily, PmfKind};

use crate::config::{FamilyParams, Format, RunConfig};
use crate::error::CliError;
use crate::parallel::{sweep_parallel, trace_first_replication, validate_bounds_parallel};
use crate::report::{self, open_sink, Cell, SimReportJson, Table};

#[derive(Debug, Parser)]
#[command(name = "netcap", version, about = "Capacity bounds for random multi-hop Aloha paths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower, upper and asymptotic capacity for one configuration.
    Bounds(RunArgs),
    /// Bounds along a one-dimensional grid (CSV).
    Sweep(SweepArgs),
    /// Gain table over a catalog of density or hop-count laws (CSV).
    Gains(GainsArgs),
    /// Closed-form gain-maximizing laws against exhaustive LP enumeration (CSV).
    Oracle(OracleArgs),
    /// Monte Carlo check of the bounds (JSON report).
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; `-` for standard output.
    #[arg(long, short)]
    pub output: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, short)]
    pub config: PathBuf,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Horizon; also replaces `sim.t`.
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub gamma: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variable {
    T,
    Gamma,
    MeanK,
    MeanN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Point,
    GainMax,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum)]
    pub variable: Variable,
    /// `a,b,c`, `lo:hi:step` or `lo:hi:xF` (geometric).
    #[arg(long)]
    pub grid: String,
    /// Law generated from each mean for `mean-k` / `mean-n`.
    #[arg(long, value_enum, default_value = "point")]
    pub shape: Shape,
    /// Largest support value of the gain-maximizing law (`n` is required
    /// for `mean-n`; `k` defaults to the row's horizon).
    #[arg(long)]
    pub max: Option<u32>,
    /// With `mean-k`: set t = ceil(mean^(1 + zeta)) on every row.
    #[arg(long)]
    pub couple_t: bool,
    /// With `mean-k`: also set gamma = round(mean).
    #[arg(long)]
    pub couple_gamma: bool,
    #[arg(long, default_value_t = 0.5)]
    pub zeta: f64,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    /// Absolute mean of `gain_max`.
    #[arg(long)]
    pub mean: Option<f64>,
    /// Mean of `gain_max` as a fraction of n (default 0.5).
    #[arg(long)]
    pub mean_fraction: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct GainsArgs {
    #[arg(long, default_value = "64:16384:x2")]
    pub n_grid: String,
    /// Comma-separated family names; all by default.
    #[arg(long)]
    pub families: Option<String>,
    /// Hop-count table (gain_K) instead of the density table.
    #[arg(long)]
    pub hops: bool,
    #[command(flatten)]
    pub params: FamilyArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Largest support value(s), same grid syntax as `sweep --grid`.
    #[arg(long, default_value = "3:30:1")]
    pub n: String,
    /// Mean grid; by default every multiple of 0.25 in the feasible range.
    #[arg(long)]
    pub means: Option<String>,
    #[arg(long)]
    pub hops: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Trajectory CSV of replication 0; implies recording.
    #[arg(long)]
    pub trajectory: Option<String>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds(args) => cmd_bounds(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Gains(args) => cmd_gains(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Simulate(args) => cmd_simulate(&args),
    }
}

impl RunArgs {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::load(&self.config)?;
        if let Some(t) = self.t {
            cfg.query.t = t;
            if let Some(sim) = cfg.sim.as_mut() {
                sim.t = t;
            }
        }
        if let Some(eps) = self.eps {
            cfg.query.epsilon = eps;
        }
        if let Some(g) = self.gamma {
            cfg.network.gamma = g;
        }
        if let Some(seed) = self.seed {
            if let Some(sim) = cfg.sim.as_mut() {
                sim.seed = seed;
            }
        }
        if let Some(path) = &self.out.output {
            cfg.output.path = path.clone();
        }
        if let Some(f) = self.out.format {
            cfg.output.format = Some(f);
        }
        Ok(cfg)
    }
}

fn emit(table: &Table, out: &OutputArgs, default: Format) -> Result<(), CliError> {
    let sink = open_sink(out.output.as_deref().unwrap_or("-"))?;
    table.write(out.format.unwrap_or(default), sink)
}

fn cmd_bounds(args: &RunArgs) -> Result<(), CliError> {
    let cfg = args.load()?;
    let b = netcap_core::bounds::capacity_bounds(&cfg.network()?, &cfg.query()?)?;
    let sink = open_sink(&cfg.output.path)?;
    report::write_bounds(&b, cfg.output.format.unwrap_or(Format::Json), sink)
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let cfg = args.run.load()?;
    let grid = parse_grid(&args.grid)?;
    let axis = match (args.variable, args.shape) {
        (Variable::T, _) => SweepAxis::Horizon,
        (Variable::Gamma, _) => SweepAxis::Gamma,
        (Variable::MeanK, Shape::Point) => SweepAxis::MeanHops(HopShape::PointMass),
        (Variable::MeanK, Shape::GainMax) => SweepAxis::MeanHops(HopShape::GainMax { k_max: args.max }),
        (Variable::MeanN, Shape::Point) => SweepAxis::MeanDensity(DensityShape::PointMass),
        (Variable::MeanN, Shape::GainMax) => {
            let n_max = args.max.ok_or_else(|| {
                CliError::Precondition("--shape gain-max with mean-n needs --max".into())
            })?;
            SweepAxis::MeanDensity(DensityShape::GainMax { n_max })
        }
    };
    let coupling = if args.couple_t || args.couple_gamma {
        if args.variable != Variable::MeanK {
            return Err(CliError::Precondition("coupled scaling applies to mean-k sweeps only".into()));
        }
        Some(Coupling {
            zeta: args.zeta,
            gamma_follows_mean: args.couple_gamma,
        })
    } else {
        None
    };
    let net = cfg.network()?;
    let query = cfg.query()?;
    let rows = sweep_parallel(&net, &query, axis, &grid, coupling);
    let name = args.variable.to_possible_value().expect("no skipped variants");
    let table = report::sweep_table(name.get_name(), &rows);
    let sink = open_sink(&cfg.output.path)?;
    table.write(cfg.output.format.unwrap_or(Format::Csv), sink)
}

fn parse_families(list: Option<&str>) -> Result<Vec<CatalogFamily>, CliError> {
    let Some(list) = list else {
        return Ok(CatalogFamily::ALL.to_vec());
    };
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| CatalogFamily::from_name(s).ok_or_else(|| CliError::Parse(format!("--families: unknown family `{s}`"))))
        .collect()
}

fn cmd_gains(args: &GainsArgs) -> Result<(), CliError> {
    let grid = parse_integer_grid("--n-grid", &args.n_grid)?;
    let families = parse_families(args.families.as_deref())?;
    let params = FamilyParams {
        r: args.params.r,
        a: args.params.a,
        mean: args.params.mean,
        mean_fraction: args.params.mean_fraction,
    }
    .to_catalog()?;
    let table = if args.hops {
        report::hop_gains_table(&hop_gain_report(&grid, &families, &params)?)
    } else {
        report::gains_table(&table1_report(&grid, &families, &params)?)
    };
    emit(&table, &args.out, Format::Csv)
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), CliError> {
    let ns = parse_integer_grid("--n", &args.n)?;
    let given = args.means.as_deref().map(parse_grid).transpose()?;
    let kind = if args.hops { PmfKind::HopCount } else { PmfKind::Density };
    let mut table = Table::new(vec!["n", "mean", "closed", "oracle", "abs_diff", "status"]);
    for &n in &ns {
        let means = match &given {
            Some(m) => m.clone(),
            None => quarter_grid(kind.min_support() as f64, n as f64),
        };
        for mean in means {
            let pair = if args.hops {
                gains::gain_max_hops(n, mean)
                    .and_then(|law| law.mean_log())
                    .and_then(|c| Ok((c, gains::lp_oracle_hops(n, mean)?.optimum)))
            } else {
                gains::gain_max_density(n, mean)
                    .and_then(|law| law.mean_reciprocal())
                    .and_then(|c| Ok((c, gains::lp_oracle_density(n, mean)?.optimum)))
            };
            let mut row = vec![Cell::Int(n.into()), Cell::Real(mean)];
            match pair {
                Ok((closed, oracle)) => row.extend([
                    Cell::Real(closed),
                    Cell::Real(oracle),
                    Cell::Real((closed - oracle).abs()),
                    Cell::Text("ok".into()),
                ]),
                Err(e) => row.extend([
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Text(format!("infeasible: {e}")),
                ]),
            }
            table.push(row);
        }
    }
    emit(&table, &args.out, Format::Csv)
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let mut cfg = args.run.load()?;
    if let Some(path) = &args.trajectory {
        cfg.output.trajectory = Some(path.clone());
        if let Some(sim) = cfg.sim.as_mut() {
            sim.record_trajectory = true;
        }
    }
    let net = cfg.network()?;
    let query = cfg.query()?;
    let sim = cfg.sim()?;
    let trajectory_path = match (sim.record_trajectory, &cfg.output.trajectory) {
        (false, _) => None,
        (true, Some(p)) => Some(p.clone()),
        (true, None) => {
            return Err(CliError::Precondition(
                "record_trajectory needs `output.trajectory` or --trajectory".into(),
            ))
        }
    };
    let result = validate_bounds_parallel(&net, &query, &sim)?;
    let json = SimReportJson::new(&result, sim.seed);
    let sink = open_sink(&cfg.output.path)?;
    match cfg.output.format.unwrap_or(Format::Json) {
        Format::Json => report::write_json(&json, sink)?,
        Format::Csv => json.summary_table().write_csv(sink)?,
    }
    if let Some(path) = trajectory_path {
        let rows = trace_first_replication(&net, &sim);
        report::trajectory_table(&rows).write_csv(open_sink(&path)?)?;
    }
    Ok(())
}

fn quarter_grid(lo: f64, hi: f64) -> Vec<f64> {
    let steps = ((hi - lo) / 0.25).floor() as usize;
    (0..=steps).map(|i| lo + 0.25 * i as f64).collect()
}

/// Parses `a,b,c`, `lo:hi:step` or `lo:hi:xF`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    const MAX_POINTS: usize = 1_000_000;
    let bad = |why: &str| CliError::Parse(format!("grid `{spec}`: {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("`{s}` is not a number")));
    let grid = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [lo, hi, step] = parts[..] else {
            return Err(bad("expected lo:hi:step"));
        };
        let (lo, hi) = (num(lo)?, num(hi)?);
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(bad("need finite lo <= hi"));
        }
        let mut out = Vec::new();
        if let Some(f) = step.trim().strip_prefix('x') {
            let f = num(f)?;
            if !f.is_finite() || f <= 1.0 || lo <= 0.0 {
                return Err(bad("geometric grids need factor > 1 and lo > 0"));
            }
            let mut v = lo;
            while v <= hi * (1.0 + 1e-12) && out.len() <= MAX_POINTS {
                out.push(v);
                v *= f;
            }
        } else {
            let step = num(step)?;
            if !step.is_finite() || step <= 0.0 {
                return Err(bad("step must be positive"));
            }
            let n = ((hi - lo) / step + 1e-9).floor();
            if n > MAX_POINTS as f64 {
                return Err(bad("too many points"));
            }
            out.extend((0..=n as usize).map(|i| lo + step * i as f64));
        }
        out
    } else {
        spec.split(',').filter(|s| !s.trim().is_empty()).map(num).collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return Err(bad("empty"));
    }
    if grid.len() > MAX_POINTS {
        return Err(bad("too many points"));
    }
    Ok(grid)
}

fn parse_integer_grid(flag: &str, spec: &str) -> Result<Vec<u32>, CliError> {
    parse_grid(spec)?
        .into_iter()
        .map(|v| {
            let r = v.round();
            if (v - r).abs() > 1e-9 || r < 0.0 || r > u32::MAX as f64 {
                Err(CliError::Parse(format!("{flag}: {v} is not a non-negative integer")))
            } else {
                Ok(r as u32)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("1, 2,4").unwrap(), vec![1.0, 2.0, 4.0]);
        assert_eq!(parse_grid("1:2:0.25").unwrap(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        assert_eq!(parse_grid("64:1024:x2").unwrap(), vec![64.0, 128.0, 256.0, 512.0, 1024.0]);
        assert_eq!(parse_grid("3:3:1").unwrap(), vec![3.0]);
        for bad in ["", "1:2", "2:1:1", "1:2:0", "1:8:x1", "a,b", "0:4:x2"] {
            assert!(matches!(parse_grid(bad), Err(CliError::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn integer_grids_reject_fractions() {
        assert_eq!(parse_integer_grid("--n", "3:5:1").unwrap(), vec![3, 4, 5]);
        assert!(parse_integer_grid("--n", "1.5").is_err());
    }

    #[test]
    fn quarter_grid_covers_both_ends() {
        let g = quarter_grid(2.0, 4.0);
        assert_eq!(g.len(), 9);
        assert_eq!(*g.last().unwrap(), 4.0);
    }

    #[test]
    fn family_lists() {
        assert_eq!(parse_families(None).unwrap().len(), CatalogFamily::ALL.len());
        assert_eq!(
            parse_families(Some("uniform,gain_max")).unwrap(),
            vec![CatalogFamily::Uniform, CatalogFamily::GainMax]
        );
        assert!(parse_families(Some("uniform,nope")).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
