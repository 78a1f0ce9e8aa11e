use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rigikit::enumeration::{enumerate_partitioned, enumerate_regular_with, Partition, SearchSpec};
use rigikit::graph::Graph;
use rigikit::harness::{verify_families, HarnessConfig};
use rigikit::par::Exec;
use rigikit::rigidity::{generic_rank, RankConfig};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("regular-10-6", name), &exec, |b, &exec| {
            b.iter(|| enumerate_regular_with(10, 6, exec).unwrap())
        });
        let spec = SearchSpec::new(9).degrees(4, 8).edges(18, 21).sparse(3);
        group.bench_with_input(BenchmarkId::new("sparse-9-d3", name), &exec, |b, &exec| {
            b.iter(|| enumerate_partitioned(&spec, Partition::WHOLE, exec).unwrap())
        });
    }
    group.finish();
}

fn batch_rank(c: &mut Criterion) {
    let graphs: Vec<Graph> = enumerate_regular_with(10, 6, Exec::Parallel).unwrap();
    let config = RankConfig::default();
    let mut group = c.benchmark_group("rank-batch");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("regular-10-6-d4", name), &exec, |b, &exec| {
            b.iter(|| exec.map(&graphs, |g| generic_rank(g, 4, &config)))
        });
    }
    group.finish();
}

fn rank_trials(c: &mut Criterion) {
    // A dependent graph with no count or cut certificate runs every trial.
    let g = Graph::complete_bipartite(7, 7).unwrap();
    let mut group = c.benchmark_group("rank-trials");
    for (name, exec) in MODES {
        let config = RankConfig::default().with_trials(4).with_exec(exec);
        group.bench_with_input(BenchmarkId::new("K77-d5", name), &config, |b, config| {
            b.iter(|| generic_rank(&g, 5, config))
        });
    }
    group.finish();
}

fn families(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, exec) in MODES {
        let config = HarnessConfig::default().with_exec(exec);
        group.bench_with_input(BenchmarkId::new("families-5", name), &config, |b, config| {
            b.iter(|| verify_families(5, config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, batch_rank, rank_trials, families);
criterion_main!(benches);
