//! The acceptance criteria, each at zero tolerance. Prints one line per criterion and exits
//! nonzero unless every criterion passes or fails exactly in its analysed way.

use std::time::{Duration, Instant};

use clusterkit::basis::{delta_multiple, transition_matrix, BasisCatalog, Flavor};
use clusterkit::laurent::parse;
use clusterkit::oracle::{cc_map_direct, KindFamily, ModuleKind, OracleConfig};
use clusterkit::report::Report;
use clusterkit::tube::{chebyshev_sweep, difference_suite, TubeContext};
use clusterkit::verify::{
    constant_terms, denominators, grassmannian_suite, oracle_agreement, product_pairs, projective_injective,
    VerifyConfig, D4_GENERIC_VALUE,
};
use clusterkit::{builtin, Context};

const BUILTINS: &[&str] = &["kronecker", "A22tilde", "A32tilde", "D4tilde", "D5tilde"];
const ALTERNATING: &[&str] = &["kronecker", "A22tilde", "D4tilde"];

enum Outcome {
    Pass,
    Fail(String),
    /// Red, with every failure inside the class the analysis predicts.
    ExpectedRed(String),
}

fn verdict(reports: &[Report]) -> Outcome {
    let bad: Vec<&Report> = reports.iter().filter(|r| !r.pass).collect();
    match bad.first() {
        None => Outcome::Pass,
        Some(r) => Outcome::Fail(format!("{} of {} failed, first {} {}", bad.len(), reports.len(), r.identity, r.params)),
    }
}

fn within(o: Outcome, spent: Duration, limit: Duration) -> Outcome {
    match o {
        Outcome::Pass if spent > limit => Outcome::Fail(format!("took {spent:?}, limit {limit:?}")),
        o => o,
    }
}

fn context(name: &str, k: i64) -> Context {
    let q = builtin(name).unwrap();
    let bound = delta_multiple(q.delta().unwrap(), k);
    Context::for_box(&q, &bound, &OracleConfig::default()).unwrap()
}

fn golden_value() -> Outcome {
    let t0 = Instant::now();
    let q = builtin("D4tilde").unwrap();
    let cfg = OracleConfig::default();
    let x = cc_map_direct(&q, &KindFamily::new(&q, ModuleKind::GenericDelta, cfg.seed), &cfg).unwrap();
    let expected = parse(5, D4_GENERIC_VALUE).unwrap();
    let o = verdict(&[Report::compare("generic_value", serde_json::json!({}), &x, &expected)]);
    within(o, t0.elapsed(), Duration::from_secs(60))
}

fn oracle_matches_engine() -> Outcome {
    let t0 = Instant::now();
    let v = VerifyConfig::default();
    let mut reports = Vec::new();
    for name in ALTERNATING {
        reports.extend(oracle_agreement(&context(name, 3), &v).unwrap());
    }
    within(verdict(&reports), t0.elapsed(), Duration::from_secs(300))
}

fn homogeneous_products() -> Outcome {
    let mut reports = Vec::new();
    for name in ["kronecker", "D4tilde"] {
        let ctx = Context::new(&builtin(name).unwrap(), 2, &OracleConfig::default()).unwrap();
        reports.extend(chebyshev_sweep(&ctx, 6).unwrap().into_iter().filter(|r| r.identity == "homogeneous_product"));
    }
    verdict(&reports)
}

fn tube_theorem() -> Outcome {
    let mut reports = Vec::new();
    for (name, rank) in [("A32tilde", 3), ("D4tilde", 2)] {
        let ctx = Context::new(&builtin(name).unwrap(), 2, &OracleConfig::default()).unwrap();
        let t = ctx.tubes().iter().position(|t| t.rank == rank).unwrap();
        let tc = TubeContext::new(&ctx, t).unwrap();
        reports.extend(tc.product_sweep(5, 1).unwrap());
        if rank == 3 {
            reports.extend(tc.rank3_expansions(1, 8).unwrap());
        }
    }
    verdict(&reports)
}

fn difference_identity() -> Outcome {
    let mut reports = Vec::new();
    for name in ["A22tilde", "A32tilde", "D4tilde", "D5tilde"] {
        let ctx = Context::new(&builtin(name).unwrap(), 2, &OracleConfig::default()).unwrap();
        reports.extend(difference_suite(&ctx).unwrap().reports);
    }
    verdict(&reports)
}

fn catalog_check(names: &[&str], check: impl Fn(&BasisCatalog) -> Vec<Report>) -> Outcome {
    let mut reports = Vec::new();
    for name in names {
        let ctx = context(name, 2);
        let bound = delta_multiple(ctx.delta(), 2);
        for flavor in [Flavor::Bprime, Flavor::Bg] {
            reports.extend(check(&BasisCatalog::build(&ctx, &bound, flavor).unwrap()));
        }
    }
    verdict(&reports)
}

fn basis_integrality() -> Outcome {
    let v = VerifyConfig::default();
    let mut failures = Vec::new();
    let mut expected = Vec::new();
    for name in BUILTINS {
        let ctx = context(name, 2);
        let bound = delta_multiple(ctx.delta(), 2);
        let cat = BasisCatalog::build(&ctx, &bound, Flavor::Bprime).unwrap();
        let reports = product_pairs(&cat, &v).unwrap();
        assert_eq!(reports.len(), v.pairs);
        let bad: Vec<&Report> = reports.iter().filter(|r| !r.pass).collect();
        if bad.is_empty() {
            continue;
        }
        // Off alternating orientations the numerators lose constant term one, and a shift meeting
        // a module part at the same vertex cancels the top monomial; the expansion itself stays exact.
        let explained = !ctx.quiver().is_alternating()
            && bad.iter().all(|r| r.params["clash"] == true && r.params.get("error").is_none());
        if explained {
            expected.push(format!("{name}: {}/{} clash pairs without coefficient 1 at the key sum", bad.len(), reports.len()));
        } else {
            failures.push(format!("{name}: {} failed, first {}", bad.len(), bad[0].params));
        }
    }
    match (failures.is_empty(), expected.is_empty()) {
        (true, true) => Outcome::Pass,
        (true, false) => Outcome::ExpectedRed(expected.join("; ")),
        _ => Outcome::Fail(failures.join("; ")),
    }
}

fn unitriangular() -> Outcome {
    let mut reports = Vec::new();
    for name in BUILTINS {
        let ctx = context(name, 2);
        let bound = delta_multiple(ctx.delta(), 2);
        let bprime = BasisCatalog::build(&ctx, &bound, Flavor::Bprime).unwrap();
        let bg = BasisCatalog::build(&ctx, &bound, Flavor::Bg).unwrap();
        let tm = transition_matrix(&bprime, &bg).unwrap();
        reports.push(Report::flag("unitriangular", serde_json::json!({"quiver": name}), tm.is_unitriangular()));
    }
    verdict(&reports)
}

fn main() {
    let v = VerifyConfig::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("generic regular value of D~4 equals its closed form", Box::new(golden_value)),
        ("engine equals oracle up to total dimension 6", Box::new(oracle_matches_engine)),
        ("homogeneous tube products", Box::new(homogeneous_products)),
        ("tube multiplication theorem and rank-3 expansions", Box::new(tube_theorem)),
        ("difference identity at rank and rank + 2", Box::new(difference_identity)),
        ("denominator vector equals dimension vector", Box::new(|| catalog_check(BUILTINS, |c| denominators(c, &v).unwrap()))),
        ("constant term one on alternating quivers", Box::new(|| catalog_check(ALTERNATING, |c| vec![constant_terms(c, &v).unwrap()]))),
        ("random products expand integrally with leading coefficient 1", Box::new(basis_integrality)),
        ("transition between bases is unitriangular", Box::new(unitriangular)),
        ("projective-injective product on D~4", Box::new(|| verdict(&projective_injective(&OracleConfig::default()).unwrap()))),
        ("Grassmannian Euler characteristic identities", Box::new(|| verdict(&grassmannian_suite(&OracleConfig::default()).unwrap().reports))),
    ];
    let mut ok = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let line = match run() {
            Outcome::Pass => format!("PASS  {name}"),
            Outcome::ExpectedRed(why) => format!("FAIL  {name} [expected: {why}]"),
            Outcome::Fail(why) => {
                ok = false;
                format!("FAIL  {name}: {why}")
            }
        };
        println!("criterion {:>2}  {line}  ({:.1?})", k + 1, t0.elapsed());
    }
    if !ok {
        std::process::exit(1);
    }
}
