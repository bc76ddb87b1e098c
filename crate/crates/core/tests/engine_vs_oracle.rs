use clusterkit::oracle::OracleConfig;
use clusterkit::{builtin, Context};

fn check(name: &str) {
    let q = builtin(name).unwrap();
    let delta = q.delta().unwrap().clone();
    let bound: Vec<i64> = delta.iter().map(|x| 3 * x).collect();
    let ctx = Context::for_box(&q, &bound, &OracleConfig::default()).unwrap();
    let mut checked = 0;
    for m in ctx.indecomposables(&bound, 8) {
        let d = ctx.dim_of(&m);
        if d.iter().sum::<i64>() > 6 || m.is_shift() {
            continue;
        }
        let engine = ctx.x_indec(&m).unwrap();
        let direct = ctx.oracle_value(&m).unwrap();
        assert_eq!(engine, direct, "{name}: {m}");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn kronecker() {
    check("kronecker");
}

#[test]
fn a22() {
    check("A22tilde");
}

#[test]
fn d4() {
    check("D4tilde");
}

#[test]
fn a32() {
    check("A32tilde");
}

#[test]
fn d5() {
    check("D5tilde");
}
