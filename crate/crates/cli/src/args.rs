use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlatency::PathFactor;

#[derive(Debug, Parser)]
#[command(name = "qlatency", version, about = "Latency estimation for quantum circuits on tiled architectures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the mapped latency of a circuit without mapping it.
    Estimate(EstimateArgs),
    /// Run the reference placer/scheduler/router on a circuit.
    Simulate(SimulateArgs),
    /// Estimate and simulate every netlist in a directory and report errors and speedups.
    Compare(CompareArgs),
    /// Fit the routing speed v to simulated latencies of a training set.
    Calibrate(CalibrateArgs),
    /// Write a seeded random fault-tolerant circuit.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Fabric and model settings shared by every mode. Flags override values
/// read from `--config`.
#[derive(Debug, Clone, Args)]
pub struct FabricArgs {
    /// Flat TOML file with keys a, b, N_c, v, T_move, d_CNOT, d_H, d_T,
    /// d_TDAG, d_S, d_X, d_Y, d_Z, q_max, path_factor.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Fabric size in ULBs, e.g. 60x60.
    #[arg(long, value_name = "AxB", value_parser = parse_fabric)]
    pub fabric: Option<(usize, usize)>,
    /// Channel capacity N_c.
    #[arg(long, value_name = "N")]
    pub capacity: Option<usize>,
    /// Routing speed v, ULB per microsecond.
    #[arg(long, value_name = "V")]
    pub speed: Option<f64>,
    /// Hop time T_move, microseconds.
    #[arg(long, value_name = "US")]
    pub t_move: Option<f64>,
    /// Highest occupancy order in the coverage sum.
    #[arg(long, value_name = "N")]
    pub qmax: Option<usize>,
    /// Tour-to-path length factor.
    #[arg(long, value_name = "KIND")]
    pub path_factor: Option<PathFactor>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Netlist (.qn) or .real circuit; non-FT gates are lowered first.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub fabric: FabricArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Dump the dependency graph as Graphviz with the critical path highlighted.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    /// Dump the interaction graph as `i j weight` lines.
    #[arg(long, value_name = "FILE")]
    pub iig: Option<PathBuf>,
    /// Write the lowered fault-tolerant circuit as a netlist.
    #[arg(long, value_name = "FILE")]
    pub ft_netlist: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub fabric: FabricArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Write the event trace as CSV.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Directory of .qn/.real files, or a single file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Placement seed; file k (in name order) uses seed + k.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub fabric: FabricArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Directory of training circuits, or a single file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub fabric: FabricArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also write the calibrated settings as a config file.
    #[arg(long, value_name = "FILE")]
    pub save_config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub qubits: usize,
    #[arg(long)]
    pub ops: usize,
    #[arg(long, default_value_t = 0.4)]
    pub cnot_fraction: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the netlist here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

fn parse_fabric(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got `{s}`"))?;
    let dim = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad fabric dimension `{t}`"));
    Ok((dim(a)?, dim(b)?))
}
