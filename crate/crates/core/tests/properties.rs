//! Algebraic invariants checked on random inputs.

use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use clusterkit::basis::{delta_multiple, BasisCatalog, Flavor};
use clusterkit::oracle::OracleConfig;
use clusterkit::tube::TubeContext;
use clusterkit::{builtin, ClusterObject, Context, Indec, LaurentPolynomial};

const NAMES: &[&str] = &["kronecker", "A22tilde", "A32tilde", "D4tilde", "D5tilde"];

fn laurent(nvars: usize) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(-3i64..4, nvars), -5i64..6), 0..6)
        .prop_map(move |ts| LaurentPolynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn contexts() -> &'static Vec<Context> {
    static CTX: OnceLock<Vec<Context>> = OnceLock::new();
    CTX.get_or_init(|| {
        NAMES
            .iter()
            .map(|n| {
                let q = builtin(n).unwrap();
                Context::for_box(&q, &delta_multiple(q.delta().unwrap(), 2), &OracleConfig::default()).unwrap()
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(3), b in laurent(3), c in laurent(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &LaurentPolynomial::one(3), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(3), b in laurent(3)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn coxeter_inverse(k in 0..NAMES.len(), d in prop::collection::vec(-4i64..5, 6), p in -3i64..4) {
        let q = builtin(NAMES[k]).unwrap();
        let d = &d[..q.vertex_count()];
        prop_assert_eq!(q.coxeter(&q.coxeter(d, p), -p), d.to_vec());
        // The Coxeter transformation is an isometry of the Euler form and fixes δ.
        prop_assert_eq!(q.euler(&q.coxeter(d, 1), &q.coxeter(d, 1)), q.euler(d, d));
        prop_assert_eq!(q.coxeter(q.delta().unwrap(), p), q.delta().unwrap().clone());
    }

    #[test]
    fn reflection_is_an_involution(k in 0..NAMES.len(), v in 0usize..6, d in prop::collection::vec(-4i64..5, 6)) {
        let q = builtin(NAMES[k]).unwrap();
        let v = v % q.vertex_count();
        prop_assume!(q.is_sink(v) || q.is_source(v));
        let d = &d[..q.vertex_count()];
        let (back, r) = q.reflect(v).unwrap();
        let (again, r2) = back.reflect(v).unwrap();
        prop_assert_eq!(again.arrows(), q.arrows());
        prop_assert_eq!(r2.apply(&r.apply(d)), d.to_vec());
        prop_assert_eq!(q.tits_form(&r.apply(d)), q.tits_form(d));
    }

    #[test]
    fn cluster_ext_is_symmetric(k in 0..NAMES.len(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ctx = &contexts()[k];
        let bound = delta_multiple(ctx.delta(), 2);
        let objects: Vec<Indec> = ctx.indecomposables(&bound, 4);
        let (x, y) = (a.get(&objects), b.get(&objects));
        prop_assert_eq!(ctx.ext1_cc_dim(x, y).unwrap(), ctx.ext1_cc_dim(y, x).unwrap());
        // Values are multiplicative on direct sums.
        let sum = ClusterObject::new(vec![x.clone(), y.clone()]);
        prop_assert_eq!(ctx.x_of(&sum).unwrap(), &ctx.x_indec(x).unwrap() * &ctx.x_indec(y).unwrap());
    }

    #[test]
    fn tube_recursion(k in 0..NAMES.len(), t in 0usize..3, i in 1i64..4, len in -1i64..7) {
        let ctx = &contexts()[k];
        prop_assume!(t < ctx.tubes().len());
        let tc = TubeContext::new(ctx, t).unwrap();
        let next = &(&tc.x(i, len).unwrap() * &tc.x(i + len, 1).unwrap()) - &tc.x(i, len - 1).unwrap();
        prop_assert_eq!(next, tc.x(i, len + 1).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansion_reconstructs_product(k in 0..NAMES.len(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ctx = &contexts()[k];
        let bound = delta_multiple(ctx.delta(), 2);
        let cat = BasisCatalog::build(ctx, &bound, Flavor::Bprime).unwrap();
        let small: Vec<Vec<i64>> = cat
            .keys()
            .into_iter()
            .filter(|d| d.iter().zip(ctx.delta()).all(|(x, y)| x.abs() <= *y))
            .collect();
        let (x, y) = (a.get(&small), b.get(&small));
        let f = &cat.value(x).unwrap() * &cat.value(y).unwrap();
        let e = cat.expand(&f).unwrap();
        let mut back = LaurentPolynomial::zero(ctx.nvars());
        for (d, c) in &e.terms {
            back = &back + &cat.value(d).unwrap().scale(c);
        }
        prop_assert_eq!(back, f);
    }
}
