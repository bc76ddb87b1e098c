//! Sequential against data-parallel execution of the heavier batteries.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use clusterkit::basis::{delta_multiple, BasisCatalog, Flavor};
use clusterkit::oracle::{cc_map_direct, KindFamily, ModuleKind, OracleConfig};
use clusterkit::par::ExecMode;
use clusterkit::verify::{denominators, product_pairs, tube_suite, VerifyConfig};
use clusterkit::{builtin, Context};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn basis(c: &mut Criterion) {
    let q = builtin("D4tilde").unwrap();
    let bound = delta_multiple(q.delta().unwrap(), 2);
    let ctx = Context::for_box(&q, &bound, &OracleConfig::default()).unwrap();
    let cat = BasisCatalog::build(&ctx, &bound, Flavor::Bprime).unwrap();
    let mut g = c.benchmark_group("basis_D4tilde");
    g.sample_size(10);
    for (name, mode) in MODES {
        let v = VerifyConfig { mode, ..VerifyConfig::default() };
        g.bench_with_input(BenchmarkId::new("product_pairs", name), &v, |b, v| b.iter(|| product_pairs(&cat, v).unwrap()));
        g.bench_with_input(BenchmarkId::new("denominators", name), &v, |b, v| b.iter(|| denominators(&cat, v).unwrap()));
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let q = builtin("D4tilde").unwrap();
    let mut g = c.benchmark_group("oracle_D4tilde");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = OracleConfig { mode, ..OracleConfig::default() };
        let fam = KindFamily::new(&q, ModuleKind::Homogeneous(1), cfg.seed);
        g.bench_with_input(BenchmarkId::new("generic_delta", name), &cfg, |b, cfg| {
            b.iter(|| cc_map_direct(&q, &fam, cfg).unwrap())
        });
    }
    g.finish();
}

fn tubes(c: &mut Criterion) {
    let q = builtin("D5tilde").unwrap();
    let cfg = OracleConfig::default();
    let mut g = c.benchmark_group("tube_D5tilde");
    g.sample_size(10);
    for (name, mode) in MODES {
        let v = VerifyConfig { mode, ..VerifyConfig::default() };
        g.bench_with_input(BenchmarkId::new("tube_suite", name), &v, |b, v| b.iter(|| tube_suite(&q, &cfg, v).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, basis, oracle, tubes);
criterion_main!(benches);
