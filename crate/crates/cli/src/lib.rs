//! Command-line front end: `stats`, `query` and `sweep` over SNAP-style
//! `src dst t` edge lists.
//!
//! Exit codes: 0 success, 1 usage, 2 IO or parse failure, 3 brute-force
//! engine ceiling exceeded.

pub mod args;
pub mod duration;
pub mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;
use thiserror::Error;

use folty::engine::{in_pass, out_pass};
use folty::oracle::oracle_solutions_with;
use folty::{
    evaluate, practical_table, CountTable, Execution, GraphError, OracleError, PreparedGraph, QueryError, QueryKind,
    QuerySpec, SolutionSet, TemporalGraph, Threshold, Timestamp,
};

use args::{Cli, Command, Engine, EngineArgs, Format, QueryArgs, StatsArgs, SweepArgs};
use report::{QueryEcho, RunReport, SolutionsPayload, StatsReport, Timings};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Query(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Output(_) => 2,
            CliError::Oracle(_) => 3,
        }
    }
}

fn output_err(e: impl std::fmt::Display) -> CliError {
    CliError::Output(e.to_string())
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn load_graph(path: &Path) -> Result<TemporalGraph, CliError> {
    let file = File::open(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    TemporalGraph::parse(BufReader::new(file)).map_err(|source| match source {
        GraphError::Io(source) => CliError::Io { path: path.to_owned(), source },
        source => CliError::Parse { path: path.to_owned(), source },
    })
}

// Load and orient, recording both phases.
fn prepare(path: &Path, timings: &mut Timings) -> Result<PreparedGraph, CliError> {
    let start = Instant::now();
    let g = load_graph(path)?;
    timings.load = ms(start);
    let start = Instant::now();
    let prepared = PreparedGraph::new(g);
    timings.orient = ms(start);
    Ok(prepared)
}

pub fn cmd_stats(args: &StatsArgs) -> Result<RunReport, CliError> {
    let mut timings = Timings::default();
    let g = prepare(&args.path, &mut timings)?;
    Ok(RunReport { query: None, num_solutions: None, solutions: None, stats: g.stats().into(), timings_ms: timings })
}

fn execution(e: &EngineArgs) -> Execution {
    Execution::with_threads(e.threads)
}

/// Counts for one window with the chosen engine, timing the passes.
fn count(g: &PreparedGraph, delta: Timestamp, engine: Engine, exec: &Execution, timings: &mut Timings) -> CountTable {
    match engine {
        Engine::Practical => {
            let start = Instant::now();
            let table = practical_table(g, delta, exec);
            timings.out_pass += ms(start);
            table
        }
        Engine::Folty | Engine::Oracle => {
            let PreparedGraph { temporal, static_graph, ordering } = g;
            let start = Instant::now();
            let out_count = out_pass(temporal, static_graph, ordering, delta, exec);
            timings.out_pass += ms(start);
            let start = Instant::now();
            let in_count = in_pass(temporal, static_graph, ordering, delta, exec);
            timings.in_pass += ms(start);
            CountTable { in_count, out_count, delta }
        }
    }
}

fn solve(
    g: &PreparedGraph,
    spec: &QuerySpec,
    engine: &EngineArgs,
    table: Option<&CountTable>,
    timings: &mut Timings,
) -> Result<SolutionSet, CliError> {
    if engine.engine == Engine::Oracle {
        let start = Instant::now();
        let sol = oracle_solutions_with(&g.temporal, spec, engine.oracle_limit)?;
        timings.out_pass += ms(start);
        return Ok(sol);
    }
    let owned;
    let table = match table {
        Some(t) => t,
        None => {
            owned = count(g, spec.delta(), engine.engine, &execution(engine), timings);
            &owned
        }
    };
    let start = Instant::now();
    let sol = evaluate(g, table, spec);
    timings.threshold += ms(start);
    Ok(sol)
}

pub fn query_spec(args: &QueryArgs) -> Result<QuerySpec, CliError> {
    if args.kind != QueryKind::Eaa && (args.tau1.is_some() || args.tau2.is_some()) {
        return Err(CliError::Usage(format!("--tau1/--tau2 apply to eaa only; use --tau for {}", args.kind)));
    }
    if args.kind == QueryKind::Eaa && args.tau.is_some() && args.tau1.is_some() {
        return Err(CliError::Usage("give either --tau or --tau1 for eaa, not both".into()));
    }
    Ok(QuerySpec::from_parts(args.kind, args.delta, args.tau, args.tau1, args.tau2, args.engine.universe.into())?)
}

pub fn cmd_query(args: &QueryArgs) -> Result<RunReport, CliError> {
    let spec = query_spec(args)?;
    let mut timings = Timings::default();
    let g = prepare(&args.path, &mut timings)?;
    let sol = solve(&g, &spec, &args.engine, None, &mut timings)?;
    let payload = SolutionsPayload::from(&sol);
    if let Some(path) = &args.solutions_out {
        write_solutions(path, &payload)?;
    }
    Ok(RunReport {
        query: Some(QueryEcho::new(&spec, args.engine.engine.as_str())),
        num_solutions: Some(payload.len()),
        solutions: Some(payload),
        stats: g.stats().into(),
        timings_ms: timings,
    })
}

fn write_solutions(path: &Path, payload: &SolutionsPayload) -> Result<(), CliError> {
    let file = File::create(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        let mut w = csv::Writer::from_writer(file);
        match payload {
            SolutionsPayload::Certificates(rows) => rows.iter().try_for_each(|r| w.serialize(r)),
            SolutionsPayload::Vertices(rows) => rows.iter().try_for_each(|r| w.serialize(r)),
        }
        .map_err(output_err)?;
        w.flush().map_err(output_err)
    } else {
        let mut w = BufWriter::new(file);
        serde_json::to_writer_pretty(&mut w, payload).map_err(output_err)?;
        writeln!(w).and_then(|_| w.flush()).map_err(output_err)
    }
}

/// `1/4` as `0.25` when the decimal expansion terminates, else `p/q`.
pub fn tau_text(t: Threshold) -> String {
    let (mut den, mut twos, mut fives) = (t.denom(), 0u32, 0u32);
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    let places = twos.max(fives);
    if den != 1 || places > 30 {
        return t.to_string();
    }
    // t = num * 2^(places-twos) * 5^(places-fives) / 10^places
    let scaled = t.numer() as u128 * 2u128.pow(places - twos) * 5u128.pow(places - fives);
    let pow = 10u128.pow(places);
    if places == 0 {
        return scaled.to_string();
    }
    format!("{}.{:0width$}", scaled / pow, scaled % pow, width = places as usize)
}

fn round_ms(x: f64) -> f64 {
    (x * 1e3).round() / 1e3
}

/// One line of sweep output. `elapsed_ms` is the thresholding time of the
/// row; counting time is shared by all rows of a window.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct SweepRow {
    pub kind: String,
    pub delta_s: i64,
    pub tau: String,
    pub tau2: String,
    pub universe: String,
    pub engine: String,
    pub num_solutions: usize,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Count tables computed; one per window for the counting engines.
    pub count_runs: usize,
    pub timings_ms: Timings,
}

/// `lo:hi:step`, inclusive of `hi` when the steps land on it.
pub fn parse_tau_range(text: &str) -> Result<Vec<Threshold>, CliError> {
    let usage = || CliError::Usage(format!("bad --tau-range {text:?}; expected lo:hi:step such as 0.1:0.9:0.1"));
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, step] = parts[..] else { return Err(usage()) };
    let (lo, hi, step): (Threshold, Threshold, Threshold) = (lo.parse()?, hi.parse()?, step.parse()?);
    let frac = |t: Threshold| (t.numer() as u128, t.denom() as u128);
    let ((a, b), (c, d), (e, f)) = (frac(lo), frac(hi), frac(step));
    // lo + i*step = (a*f + i*e*b) / (b*f)
    let den = b * f;
    let mut out = Vec::new();
    for i in 0u128.. {
        let num = a * f + i * e * b;
        if num * d > c * den {
            break;
        }
        let (num, den) = (u64::try_from(num).map_err(|_| usage())?, u64::try_from(den).map_err(|_| usage())?);
        out.push(Threshold::new(num, den)?);
    }
    Ok(out)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<SweepOutcome, CliError> {
    let taus = match &args.tau_range {
        Some(r) => parse_tau_range(r)?,
        None => args.tau_list.clone(),
    };
    let tau2s: Vec<Option<Threshold>> = match args.kind {
        QueryKind::Eaa => args.tau2_list.iter().copied().map(Some).collect(),
        _ if !args.tau2_list.is_empty() => return Err(CliError::Usage("--tau2-list applies to eaa only".into())),
        _ => vec![None],
    };
    if args.delta_list.is_empty() || taus.is_empty() || tau2s.is_empty() {
        return Err(CliError::Usage(match args.kind {
            QueryKind::Eaa => "empty grid: give --delta-list, --tau-list or --tau-range, and --tau2-list".into(),
            _ => "empty grid: give --delta-list and --tau-list or --tau-range".into(),
        }));
    }
    let mut timings = Timings::default();
    let g = prepare(&args.path, &mut timings)?;
    let exec = execution(&args.engine);
    let universe = args.engine.universe.into();
    let mut rows = Vec::new();
    let mut count_runs = 0;
    for &delta in &args.delta_list {
        let table = match args.engine.engine {
            Engine::Oracle => None,
            engine => {
                count_runs += 1;
                Some(count(&g, delta, engine, &exec, &mut timings))
            }
        };
        for &tau in &taus {
            for &tau2 in &tau2s {
                let spec = QuerySpec::from_parts(args.kind, delta, Some(tau), Some(tau), tau2, universe)?;
                let mut row_timings = Timings::default();
                let start = Instant::now();
                let sol = solve(&g, &spec, &args.engine, table.as_ref(), &mut row_timings)?;
                let elapsed_ms = ms(start);
                timings.threshold += row_timings.threshold;
                timings.out_pass += row_timings.out_pass;
                rows.push(SweepRow {
                    kind: args.kind.to_string(),
                    delta_s: delta,
                    tau: tau_text(tau),
                    tau2: tau2.map(tau_text).unwrap_or_default(),
                    universe: spec.universe().to_string(),
                    engine: args.engine.engine.as_str().to_string(),
                    num_solutions: sol.total(),
                    elapsed_ms: round_ms(elapsed_ms),
                });
            }
        }
    }
    Ok(SweepOutcome { rows, count_runs, timings_ms: timings })
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(["kind", "delta_s", "tau", "tau2", "universe", "engine", "num_solutions", "elapsed_ms"])
            .map_err(output_err)?;
    }
    for r in rows {
        w.serialize(r).map_err(output_err)?;
    }
    w.flush().map_err(output_err)
}

fn write_stats_text(out: &mut dyn Write, s: &StatsReport) -> io::Result<()> {
    writeln!(out, "n                   {}", s.n)?;
    writeln!(out, "m                   {}", s.m)?;
    writeln!(out, "static_edges        {}", s.static_edges)?;
    writeln!(out, "alpha               {}", s.alpha)?;
    writeln!(out, "sigma_max           {}", s.sigma_max)?;
    writeln!(out, "sum_edge_degree     {}", s.sum_edge_degree)?;
    writeln!(out, "self_loops_dropped  {}", s.self_loops_dropped)
}

fn spec_tau(text: Option<&String>) -> String {
    text.map(|s| s.parse().map_or_else(|_| s.clone(), tau_text)).unwrap_or_default()
}

pub fn write_report(report: &RunReport, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report).map_err(output_err)?;
            writeln!(out).map_err(output_err)
        }
        Format::Text => {
            if let Some(q) = &report.query {
                writeln!(out, "kind                {}", q.kind).map_err(output_err)?;
                writeln!(out, "delta_s             {}", q.delta_s).map_err(output_err)?;
                for (name, v) in [("tau", &q.tau), ("tau1", &q.tau1), ("tau2", &q.tau2)] {
                    if let Some(v) = v {
                        writeln!(out, "{name:<20}{v}").map_err(output_err)?;
                    }
                }
                writeln!(out, "universe            {}", q.universe).map_err(output_err)?;
                writeln!(out, "engine              {}", q.engine).map_err(output_err)?;
            }
            if let Some(n) = report.num_solutions {
                writeln!(out, "num_solutions       {n}").map_err(output_err)?;
            }
            write_stats_text(out, &report.stats).map_err(output_err)?;
            let t = &report.timings_ms;
            writeln!(
                out,
                "time_ms             load {:.1}, orient {:.1}, out {:.1}, in {:.1}, threshold {:.1}",
                t.load, t.orient, t.out_pass, t.in_pass, t.threshold
            )
            .map_err(output_err)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let s = &report.stats;
            match &report.query {
                Some(q) => {
                    let elapsed = report.timings_ms.out_pass + report.timings_ms.in_pass + report.timings_ms.threshold;
                    w.serialize(SweepRow {
                        kind: q.kind.clone(),
                        delta_s: q.delta_s,
                        tau: spec_tau(q.tau.as_ref().or(q.tau1.as_ref())),
                        tau2: spec_tau(q.tau2.as_ref()),
                        universe: q.universe.clone(),
                        engine: q.engine.clone(),
                        num_solutions: report.num_solutions.unwrap_or(0),
                        elapsed_ms: round_ms(elapsed),
                    })
                }
                None => w.serialize(s),
            }
            .map_err(output_err)?;
            w.flush().map_err(output_err)
        }
    }
}

/// Runs a parsed command, writing its output to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Stats(a) => write_report(&cmd_stats(a)?, a.format, out),
        Command::Query(a) => write_report(&cmd_query(a)?, a.format, out),
        Command::Sweep(a) => write_sweep_csv(&cmd_sweep(a)?.rows, out),
    }
}

/// Full entry point: parses `args`, runs, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "folty: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_range_is_exact() {
        let v = parse_tau_range("0.1:0.5:0.1").unwrap();
        assert_eq!(v.iter().map(|t| t.to_string()).collect::<Vec<_>>(), ["1/10", "1/5", "3/10", "2/5", "1/2"]);
        assert_eq!(parse_tau_range("25%:100%:25%").unwrap().len(), 4);
        assert_eq!(parse_tau_range("0.5:0.4:0.1").unwrap(), vec![]);
        assert!(matches!(parse_tau_range("0.1:0.5"), Err(CliError::Usage(_))));
        assert!(matches!(parse_tau_range("0:0.5:0.1"), Err(CliError::Query(_))));
    }

    #[test]
    fn tau_text_prefers_decimals() {
        let t = |s: &str| tau_text(s.parse().unwrap());
        assert_eq!(t("1/4"), "0.25");
        assert_eq!(t("1"), "1");
        assert_eq!(t("1/8"), "0.125");
        assert_eq!(t("3/10"), "0.3");
        assert_eq!(t("1/3"), "1/3");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        assert_eq!(CliError::Oracle(OracleError::CeilingExceeded { edges: 2, ceiling: 1 }).exit_code(), 3);
        let io = CliError::Io { path: "x".into(), source: io::Error::other("x") };
        assert_eq!(io.exit_code(), 2);
    }
}
