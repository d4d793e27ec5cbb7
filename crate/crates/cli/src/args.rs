use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use folty::{QueryKind, Threshold, Timestamp, Universe};

use crate::duration::parse_duration;

#[derive(Debug, Parser)]
#[command(name = "folty", version, about = "Thresholded triadic queries over temporal edge lists")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print n, m, degeneracy, maximum multiplicity and the edge-degree sum.
    Stats(StatsArgs),
    /// Run one query.
    Query(QueryArgs),
    /// Run a query over a grid of windows and thresholds, as CSV.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Folty,
    Practical,
    Oracle,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Folty => "folty",
            Engine::Practical => "practical",
            Engine::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UniverseArg {
    Dst,
    Common,
}

impl From<UniverseArg> for Universe {
    fn from(u: UniverseArg) -> Self {
        match u {
            UniverseArg::Dst => Universe::Dst,
            UniverseArg::Common => Universe::Common,
        }
    }
}

fn parse_kind(s: &str) -> Result<QueryKind, String> {
    s.parse().map_err(|e: folty::QueryError| e.to_string())
}

fn parse_tau(s: &str) -> Result<Threshold, String> {
    s.parse().map_err(|e: folty::QueryError| e.to_string())
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value_t = UniverseArg::Dst)]
    pub universe: UniverseArg,
    #[arg(long, value_enum, default_value_t = Engine::Folty)]
    pub engine: Engine,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "FOLTY_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Largest input the brute-force engine accepts.
    #[arg(long, default_value_t = folty::oracle::DEFAULT_CEILING)]
    pub oracle_limit: usize,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// eea, eae or eaa.
    #[arg(value_parser = parse_kind)]
    pub kind: QueryKind,
    pub path: PathBuf,
    /// Window length: an integer with an optional s, m, h, d or w suffix.
    #[arg(long, value_parser = parse_duration)]
    pub delta: Timestamp,
    /// Threshold for eea and eae: 0.25, 25% or 1/4.
    #[arg(long, value_parser = parse_tau)]
    pub tau: Option<Threshold>,
    /// Outer threshold for eaa.
    #[arg(long, value_parser = parse_tau)]
    pub tau1: Option<Threshold>,
    /// Inner (certificate) threshold for eaa.
    #[arg(long, value_parser = parse_tau)]
    pub tau2: Option<Threshold>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write every solution here, as CSV when the name ends in `.csv` and
    /// JSON otherwise.
    #[arg(long)]
    pub solutions_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(value_parser = parse_kind)]
    pub kind: QueryKind,
    pub path: PathBuf,
    /// Comma-separated windows, e.g. 10m,30m,1h.
    #[arg(long, value_delimiter = ',', value_parser = parse_duration)]
    pub delta_list: Vec<Timestamp>,
    /// Comma-separated thresholds (tau for eea/eae, tau1 for eaa).
    #[arg(long, value_delimiter = ',', value_parser = parse_tau, conflicts_with = "tau_range")]
    pub tau_list: Vec<Threshold>,
    /// Inclusive range lo:hi:step, e.g. 0.1:0.9:0.1.
    #[arg(long)]
    pub tau_range: Option<String>,
    /// Comma-separated inner thresholds for eaa.
    #[arg(long, value_delimiter = ',', value_parser = parse_tau)]
    pub tau2_list: Vec<Threshold>,
    #[command(flatten)]
    pub engine: EngineArgs,
}
