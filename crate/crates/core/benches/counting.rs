//! Sequential vs rayon-parallel counting on synthetic graphs.
//!
//! `cargo bench -p folty-core` runs both; build with
//! `--no-default-features` to compare against the fallback alone.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use folty::synth::{community_graph, k_degenerate_graph};
use folty::{compute_counts, practical_table, Execution, PreparedGraph};

const DAY: i64 = 86_400;

fn graphs() -> Vec<(&'static str, PreparedGraph)> {
    vec![
        ("community-200k", PreparedGraph::new(community_graph(1, 200_000, 40, 0.5, 5, 120 * DAY))),
        ("kdeg8-200k", PreparedGraph::new(k_degenerate_graph(2, 8, 200_000, 4, 120 * DAY))),
    ]
}

fn executions() -> Vec<(String, Execution)> {
    let mut out = vec![("seq".to_string(), Execution::sequential())];
    if cfg!(feature = "parallel") {
        let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
        let par = Execution::with_threads(cores.max(2));
        out.push((format!("par{}", par.threads()), par));
    }
    out
}

fn bench_counts(c: &mut Criterion) {
    let execs = executions();
    for (name, g) in graphs() {
        let mut group = c.benchmark_group(format!("counts/{name}"));
        group.sample_size(10);
        group.throughput(Throughput::Elements(g.temporal.num_edges() as u64));
        for (label, exec) in &execs {
            group.bench_with_input(BenchmarkId::new("folty", label), &g, |b, g| {
                b.iter(|| compute_counts(g, 28 * DAY, exec))
            });
            group.bench_with_input(BenchmarkId::new("practical", label), &g, |b, g| {
                b.iter(|| practical_table(g, 28 * DAY, exec))
            });
        }
        group.finish();
    }
}

fn bench_prepare(c: &mut Criterion) {
    let g = community_graph(3, 200_000, 40, 0.5, 5, 120 * DAY);
    c.bench_function("prepare/community-200k", |b| b.iter(|| PreparedGraph::new(g.clone())));
}

criterion_group!(benches, bench_counts, bench_prepare);
criterion_main!(benches);
