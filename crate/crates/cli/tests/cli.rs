use std::io::Write;
use std::path::{Path, PathBuf};

use folty::synth::{community_graph, random_graph, RandomParams};
use folty_cli::report::{RunReport, SolutionsPayload};
use folty_cli::{run, SweepRow};
use tempfile::TempDir;

const TRIANGLE: &str = "1 2 10\n1 3 12\n2 3 15\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("folty").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn query_json(args: &[&str]) -> RunReport {
    let (code, out, err) = run_args(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn dump(dir: &TempDir, name: &str, g: &folty::TemporalGraph) -> PathBuf {
    let mut buf = Vec::new();
    g.write_edge_list(&mut buf).unwrap();
    write(dir, name, std::str::from_utf8(&buf).unwrap())
}

#[test]
fn json_report_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tri.txt", TRIANGLE);
    for args in [
        vec!["query", "eea", p(&path), "--delta", "10", "--tau", "0.5"],
        vec!["query", "eae", p(&path), "--delta", "10", "--tau", "1/2"],
        vec!["query", "eaa", p(&path), "--delta", "10", "--tau1", "50%", "--tau2", "0.5", "--universe", "common"],
        vec!["stats", p(&path), "--format", "json"],
    ] {
        let (code, out, err) = run_args(&args);
        assert_eq!(code, 0, "{err}");
        let report: RunReport = serde_json::from_str(&out).unwrap();
        let again = serde_json::to_string_pretty(&report).unwrap();
        assert_eq!(serde_json::from_str::<RunReport>(&again).unwrap(), report);
        assert_eq!(again.trim_end(), out.trim_end());
    }
}

#[test]
fn triangle_answers() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tri.txt", TRIANGLE);
    let r = query_json(&["query", "eea", p(&path), "--delta", "10", "--tau", "0.5"]);
    assert_eq!(r.num_solutions, Some(1));
    let Some(SolutionsPayload::Certificates(c)) = &r.solutions else { panic!() };
    assert_eq!((c[0].src, c[0].dst, c[0].t), (1, 2, 10));
    assert_eq!(r.stats.alpha, 2);
    assert_eq!(r.stats.sum_edge_degree, 6);
    let q = r.query.unwrap();
    assert_eq!((q.kind.as_str(), q.delta_s, q.tau.as_deref(), q.universe.as_str()), ("eea", 10, Some("1/2"), "dst"));
    assert_eq!(query_json(&["query", "eea", p(&path), "--delta", "10", "--tau", "1"]).num_solutions, Some(0));
    assert_eq!(query_json(&["query", "eae", p(&path), "--delta", "10", "--tau", "1/2"]).num_solutions, Some(1));
    let eaa = ["query", "eaa", p(&path), "--delta", "10", "--tau1", "1/2", "--tau2", "1/2"];
    assert_eq!(query_json(&eaa).num_solutions, Some(1));
}

#[test]
fn single_edge_graph_has_no_solutions() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "one.txt", "5 6 100\n");
    let r = query_json(&["query", "eea", p(&path), "--delta", "0", "--tau", "0.5"]);
    assert_eq!(r.num_solutions, Some(0));
}

#[test]
fn empty_file_stats_are_zero() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "empty.txt", "");
    let r = query_json(&["stats", p(&path), "--format", "json"]);
    assert_eq!((r.stats.n, r.stats.m, r.stats.alpha, r.stats.sigma_max, r.stats.sum_edge_degree), (0, 0, 0, 0, 0));
    let (code, out, _) = run_args(&["stats", p(&path)]);
    assert_eq!(code, 0);
    assert!(out.contains("alpha               0"));
    let (_, csv, _) = run_args(&["stats", p(&path), "--format", "csv"]);
    assert!(csv.starts_with("n,m,static_edges,alpha,sigma_max,sum_edge_degree,self_loops_dropped\n0,0,0,0,0,0,0"));
}

#[test]
fn engines_give_identical_payloads() {
    let dir = TempDir::new().unwrap();
    let small = dump(&dir, "small.txt", &random_graph(3, &RandomParams::default()));
    let big = dump(&dir, "big.txt", &community_graph(5, 20_000, 30, 0.5, 4, 60 * 86_400));
    let cases: [(&Path, &[&str]); 4] = [
        (&small, &["eea", "--tau", "1/4"]),
        (&small, &["eae", "--tau", "1/2"]),
        (&big, &["eea", "--tau", "10%", "--universe", "common"]),
        (&big, &["eaa", "--tau1", "10%", "--tau2", "10%"]),
    ];
    for (path, q) in cases {
        let payload = |engine: &str, threads: &str| {
            let mut args = vec!["query", q[0], p(path), "--delta", "4w", "--engine", engine, "--threads", threads];
            args.extend_from_slice(&q[1..]);
            let r = query_json(&args);
            assert_eq!(r.num_solutions, Some(r.solutions.as_ref().unwrap().len()));
            serde_json::to_string(&r.solutions).unwrap()
        };
        let folty = payload("folty", "1");
        assert_eq!(payload("practical", "1"), folty);
        assert_eq!(payload("folty", "3"), folty);
        if path == small.as_path() {
            assert_eq!(payload("oracle", "1"), folty);
        }
    }
}

#[test]
fn solutions_out_writes_csv_and_json() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tri.txt", TRIANGLE);
    let csv = dir.path().join("sol.csv");
    let json = dir.path().join("sol.json");
    for out in [&csv, &json] {
        let (code, _, err) =
            run_args(&["query", "eea", p(&path), "--delta", "10", "--tau", "0.5", "--solutions-out", p(out)]);
        assert_eq!(code, 0, "{err}");
    }
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "src,dst,t,eid,count,universe_size\n1,2,10,0,1,2\n");
    let payload: SolutionsPayload = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(payload.len(), 1);
}

fn sweep_rows(out: &str) -> Vec<SweepRow> {
    csv::Reader::from_reader(out.as_bytes()).deserialize().map(Result::unwrap).collect()
}

#[test]
fn sweep_is_monotone_and_ordered() {
    let dir = TempDir::new().unwrap();
    let path = dump(&dir, "g.txt", &community_graph(8, 20_000, 30, 0.5, 4, 60 * 86_400));
    for kind in ["eea", "eae"] {
        let (code, out, err) =
            run_args(&["sweep", kind, p(&path), "--delta-list", "1h,1d,1w,4w", "--tau-range", "0.05:0.5:0.05"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.starts_with("kind,delta_s,tau,tau2,universe,engine,num_solutions,elapsed_ms\n"));
        let rows = sweep_rows(&out);
        assert_eq!(rows.len(), 40);
        assert!(rows.iter().all(|r| r.tau2.is_empty() && r.kind == kind));
        assert_eq!(rows[0].tau, "0.05");
        let deltas: Vec<i64> = rows.iter().map(|r| r.delta_s).collect();
        assert!(deltas.windows(2).all(|w| w[0] <= w[1]));
        for block in rows.chunks(10) {
            assert!(block.windows(2).all(|w| w[0].num_solutions >= w[1].num_solutions), "tau sweep must not increase");
        }
        for i in 0..10 {
            let column: Vec<usize> = rows.iter().skip(i).step_by(10).map(|r| r.num_solutions).collect();
            assert!(column.windows(2).all(|w| w[0] <= w[1]), "delta sweep must not decrease");
        }
        assert!(rows.iter().any(|r| r.num_solutions > 0));
    }
    let (code, out, _) =
        run_args(&["sweep", "eaa", p(&path), "--delta-list", "4w", "--tau-list", "0.1,0.2", "--tau2-list", "0.1,0.3"]);
    assert_eq!(code, 0);
    let rows = sweep_rows(&out);
    let keys: Vec<(&str, &str)> = rows.iter().map(|r| (r.tau.as_str(), r.tau2.as_str())).collect();
    assert_eq!(keys, [("0.1", "0.1"), ("0.1", "0.3"), ("0.2", "0.1"), ("0.2", "0.3")]);
}

#[test]
fn sweep_counts_once_per_window() {
    use clap::Parser;
    use folty_cli::args::{Cli, Command};

    let dir = TempDir::new().unwrap();
    let path = dump(&dir, "g.txt", &community_graph(9, 20_000, 30, 0.5, 4, 60 * 86_400));
    let outcome = |taus: &str| {
        let cli = Cli::try_parse_from(["folty", "sweep", "eea", p(&path), "--delta-list", "1d,4w", "--tau-list", taus])
            .unwrap();
        let Command::Sweep(args) = cli.command else { panic!() };
        folty_cli::cmd_sweep(&args).unwrap()
    };
    let one = outcome("0.5");
    let many = outcome("0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.6,0.7,0.8,0.9,1");
    assert_eq!((one.count_runs, many.count_runs), (2, 2));
    assert_eq!(many.rows.len(), 30);
    let last = |o: &folty_cli::SweepOutcome, d: i64| o.rows.iter().rfind(|r| r.delta_s == d).unwrap().num_solutions;
    assert_eq!(last(&one, 86_400), many.rows[9].num_solutions);
    assert_eq!(last(&one, 2_419_200), many.rows[24].num_solutions);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", TRIANGLE);
    let bad = write(&dir, "bad.txt", "1 2 3\n1 2\n");
    let (code, _, err) = run_args(&["query", "eea", p(&bad), "--delta", "1", "--tau", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.txt") && err.contains("line 2"), "{err}");
    let missing = dir.path().join("nope.txt");
    assert_eq!(run_args(&["stats", p(&missing)]).0, 2);
    assert_eq!(run_args(&["query", "eea", p(&tri), "--delta", "1", "--tau", "1.5"]).0, 1);
    assert_eq!(run_args(&["query", "eea", p(&tri), "--delta", "1"]).0, 1);
    assert_eq!(run_args(&["query", "eea", p(&tri), "--delta", "1y", "--tau", "1"]).0, 1);
    assert_eq!(run_args(&["query", "eea", p(&tri), "--bogus"]).0, 1);
    assert_eq!(run_args(&["sweep", "eea", p(&tri), "--delta-list", "1h"]).0, 1);
    let (code, _, err) = run_args(&["query", "∀∃∃", p(&tri), "--delta", "1", "--tau", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("de Morgan"));
    let (code, _, err) =
        run_args(&["query", "eea", p(&tri), "--delta", "1", "--tau", "1", "--engine", "oracle", "--oracle-limit", "2"]);
    assert_eq!(code, 3, "{err}");
    assert_eq!(run_args(&["--help"]).0, 0);
    assert_eq!(run_args(&["--version"]).0, 0);
}

#[test]
fn threads_env_fallback() {
    use clap::Parser;
    use folty_cli::args::{Cli, Command};

    let parse = |extra: &[&str]| {
        let mut argv = vec!["folty", "query", "eea", "g.txt", "--delta", "1", "--tau", "1"];
        argv.extend_from_slice(extra);
        let Command::Query(q) = Cli::try_parse_from(argv).unwrap().command else { panic!() };
        q.engine.threads
    };
    // Only this test touches the variable.
    std::env::remove_var("FOLTY_THREADS");
    assert_eq!(parse(&[]), 1);
    std::env::set_var("FOLTY_THREADS", "3");
    assert_eq!(parse(&[]), 3);
    assert_eq!(parse(&["--threads", "2"]), 2);
    std::env::remove_var("FOLTY_THREADS");
}
