use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclecover::harness::campaign::RunOptions;
use cyclecover::harness::{generate, run_campaign, CampaignConfig, GeneratorKind, GeneratorSpec};
use cyclecover::matching::{max_contraction, max_contraction_bruteforce};
use cyclecover::partition::{find_cycle_partition, DEFAULT_CAP};
use cyclecover::structural::find_cover_triple;
use cyclecover::{par, ColouredGraph, Rational, Subgraph};
use rayon::ThreadPool;

fn pools() -> Vec<(&'static str, Option<ThreadPool>)> {
    vec![
        (
            "sequential",
            Some(rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ),
        ("rayon", None),
    ]
}

fn on<R: Send>(pool: &Option<ThreadPool>, f: impl FnOnce() -> R + Send) -> R {
    match pool {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn gnp_batch(count: u64, n: usize, p: Rational) -> Vec<ColouredGraph> {
    (0..count)
        .map(|seed| {
            generate(&GeneratorSpec {
                kind: GeneratorKind::Gnp {
                    n,
                    p,
                    q: Rational::new(1, 2),
                },
                seed,
            })
            .unwrap()
        })
        .collect()
}

fn lehel_k6(c: &mut Criterion) {
    let graphs: Vec<ColouredGraph> = (0..2048u64)
        .map(|seed| {
            generate(&GeneratorSpec {
                kind: GeneratorKind::KnColouring { n: 6 },
                seed,
            })
            .unwrap()
        })
        .collect();
    let mut group = c.benchmark_group("lehel_k6_2048");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                on(&pool, || {
                    par::map(&graphs, |g| {
                        find_cycle_partition(g, 2, true, 6, DEFAULT_CAP).unwrap().is_some()
                    })
                })
            })
        });
    }
    group.finish();
}

fn partition_n12(c: &mut Criterion) {
    let graphs = gnp_batch(8, 12, Rational::new(1, 2));
    let mut group = c.benchmark_group("partition_n12");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                on(&pool, || {
                    par::map(&graphs, |g| find_cycle_partition(g, 3, false, 12, DEFAULT_CAP).unwrap())
                })
            })
        });
    }
    group.finish();
}

fn contraction(c: &mut Criterion) {
    let graphs = gnp_batch(64, 18, Rational::new(1, 4));
    let hosts: Vec<Subgraph> = graphs.iter().map(Subgraph::from_graph).collect();
    let mut group = c.benchmark_group("contraction_n18");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("polynomial", name), |b| {
            b.iter(|| on(&pool, || par::map(&hosts, max_contraction)))
        });
        group.bench_function(BenchmarkId::new("brute_force", name), |b| {
            b.iter(|| {
                on(&pool, || {
                    par::map(&hosts, |h| max_contraction_bruteforce(h).unwrap().contraction)
                })
            })
        });
    }
    group.finish();
}

fn cover_triple(c: &mut Criterion) {
    let graphs = gnp_batch(32, 40, Rational::new(3, 4));
    let eta = Rational::new(1, 10);
    let mut group = c.benchmark_group("cover_triple_n40");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| on(&pool, || par::map(&graphs, |g| find_cover_triple(g, eta).is_some())))
        });
    }
    group.finish();
}

const CAMPAIGN: &str = r#"
name = "bench"
trials = 64
seed = 1

[generator]
kind = "gnp"
n = { min = 8, max = 12 }
p = "3/4"
q = "1/2"

[[check]]
kind = "duality"

[[check]]
kind = "partition"
k = 2
"#;

fn campaign(c: &mut Criterion) {
    let cfg = CampaignConfig::from_toml(CAMPAIGN).unwrap();
    let mut group = c.benchmark_group("campaign_64");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                on(&pool, || {
                    run_campaign(&cfg, None, &RunOptions::default()).unwrap().hard_failures
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, lehel_k6, partition_n12, contraction, cover_triple, campaign);
criterion_main!(benches);
