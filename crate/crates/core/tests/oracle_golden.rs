use clusterkit::laurent::parse;
use clusterkit::oracle::{KindFamily, ModuleKind};
use clusterkit::oracle::{cc_map_direct, OracleConfig};
use clusterkit::builtin;

#[test]
fn kronecker_simple_projective() {
    let q = builtin("kronecker").unwrap();
    let fam = KindFamily::new(&q, ModuleKind::Projective(1), 1);
    let x = cc_map_direct(&q, &fam, &OracleConfig::default()).unwrap();
    assert_eq!(x, parse(2, "(x1^2+1)/x2").unwrap());
}

#[test]
fn d4_generic_delta_golden_value() {
    let q = builtin("D4tilde").unwrap();
    let fam = KindFamily::new(&q, ModuleKind::GenericDelta, 7);
    let x = cc_map_direct(&q, &fam, &OracleConfig::default()).unwrap();
    let expected = parse(
        5,
        "1/(x1^2*x2*x3*x4*x5) + 4/(x1*x2*x3*x4*x5) + (x1^2+4*x1+6)/(x2*x3*x4*x5) + (x2*x3*x4*x5+2)/x1^2 + 4/x1",
    )
    .unwrap();
    assert_eq!(x, expected, "got {x}");
}

#[test]
fn d4_tubes() {
    let q = builtin("D4tilde").unwrap();
    assert_eq!(q.delta().unwrap(), &vec![2, 1, 1, 1, 1]);
    let tubes = q.regular_simple_orbits().unwrap();
    let simples: Vec<_> = tubes.iter().map(|t| t.simples.clone()).collect();
    assert_eq!(
        simples,
        vec![
            vec![vec![1, 1, 1, 0, 0], vec![1, 0, 0, 1, 1]],
            vec![vec![1, 1, 0, 1, 0], vec![1, 0, 1, 0, 1]],
            vec![vec![1, 1, 0, 0, 1], vec![1, 0, 1, 1, 0]],
        ]
    );
}
