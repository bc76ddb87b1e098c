//! Named batteries of identity checks, each producing a `Suite`.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::basis::{delta_multiple, transition_matrix, BasisCatalog, Flavor};
use crate::cluster::{Context, Indec};
use crate::error::TubeError;
use crate::grassmannian::{cycle_splitting, d_tilde_family};
use crate::laurent::parse;
use crate::oracle::{cc_map_direct, KindFamily, ModuleKind, OracleConfig};
use crate::par::{self, ExecMode};
use crate::quiver::{builtin, AffineClass, Quiver};
use crate::report::{Report, Suite};
use crate::tube::{
    chebyshev_sweep, compare_delta_variants, difference_suite, projective_injective_product, same_dimension_regular,
    x_ndelta, TubeContext,
};

pub const SUITES: &[&str] = &["ar", "tube", "difference", "d4", "kronecker", "basis", "grassmannian", "all"];

/// Generic regular value of the D~4 quiver with central sink, as a Laurent polynomial in five variables.
pub const D4_GENERIC_VALUE: &str =
    "1/(x1^2*x2*x3*x4*x5) + 4/(x1*x2*x3*x4*x5) + (x1^2+4*x1+6)/(x2*x3*x4*x5) + (x2*x3*x4*x5+2)/x1^2 + 4/x1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Catalog box is `box_multiple * δ`.
    pub box_multiple: i64,
    pub seed: u64,
    /// Random product pairs drawn per quiver.
    pub pairs: usize,
    /// Largest total dimension compared against the oracle.
    pub oracle_total: i64,
    pub mode: ExecMode,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { box_multiple: 2, seed: 1, pairs: 200, oracle_total: 6, mode: ExecMode::default() }
    }
}

fn summary(identity: &str, params: serde_json::Value, checked: usize, failures: Vec<String>) -> Report {
    let mut params = params;
    params["checked"] = json!(checked);
    params["failures"] = json!(failures.iter().take(8).collect::<Vec<_>>());
    Report { identity: identity.into(), params, pass: failures.is_empty(), residual_terms: failures.len() }
}

fn max_rank(ctx: &Context) -> usize {
    ctx.tubes().iter().map(|t| t.rank).max().unwrap_or(1)
}

/// Whether `q` is the D~4 quiver with all arrows into the central vertex.
pub fn is_d4_sink(q: &Quiver) -> bool {
    builtin("D4tilde").is_some_and(|d| d.arrows() == q.arrows())
}

/// AR triangles of every module in the box `2δ`, and engine against oracle for every
/// indecomposable module of small total dimension.
pub fn ar_suite(q: &Quiver, cfg: &OracleConfig, v: &VerifyConfig) -> Result<Suite, TubeError> {
    let bound = delta_multiple(q.delta()?, 2);
    // The wider horizon covers `τM` for the last preinjective slices inside the box.
    let ctx = Context::for_box(q, &delta_multiple(q.delta()?, 3), cfg)?;
    let objects: Vec<Indec> = ctx
        .indecomposables(&bound, 2 * max_rank(&ctx))
        .into_iter()
        .filter(|m| !m.is_shift() && !matches!(m, Indec::GenericReg(_) | Indec::PreProj { shift: 0, .. }))
        .collect();
    let mut suite = Suite::new("ar");
    suite.extend(par::try_map(v.mode, &objects, |m| ctx.verify_ar(m))?);
    suite.extend(oracle_agreement(&ctx, v)?);
    Ok(suite)
}

/// `x_of` against the brute-force oracle for every indecomposable module of total dimension
/// at most `v.oracle_total`.
pub fn oracle_agreement(ctx: &Context, v: &VerifyConfig) -> Result<Vec<Report>, TubeError> {
    let bound = delta_multiple(ctx.delta(), v.oracle_total);
    let objects: Vec<Indec> = ctx
        .indecomposables(&bound, v.oracle_total as usize)
        .into_iter()
        .filter(|m| !m.is_shift() && ctx.dim_of(m).iter().sum::<i64>() <= v.oracle_total)
        .collect();
    Ok(par::try_map(v.mode, &objects, |m| -> Result<Report, TubeError> {
        Ok(Report::compare("engine_vs_oracle", json!({"M": m.to_string()}), &ctx.x_indec(m)?, &ctx.oracle_value(m)?))
    })?)
}

/// Homogeneous products, the tube multiplication theorem on every tube with `k <= 5`,
/// `m <= 1`, and the rank-three expansions with `n <= 8`.
pub fn tube_suite(q: &Quiver, cfg: &OracleConfig, v: &VerifyConfig) -> Result<Suite, TubeError> {
    let ctx = Context::new(q, 2, cfg)?;
    let mut suite = Suite::new("tube");
    suite.extend(chebyshev_sweep(&ctx, 6)?);
    let tubes: Vec<usize> = (0..ctx.tubes().len()).collect();
    let per_tube = par::try_map(v.mode, &tubes, |&t| -> Result<Vec<Report>, TubeError> {
        let tc = TubeContext::new(&ctx, t)?;
        let mut out = tc.product_sweep(5, 1)?;
        if tc.rank() == 3 {
            out.extend(tc.rank3_expansions(1, 8)?);
        }
        Ok(out)
    })?;
    suite.extend(per_tube.into_iter().flatten());
    Ok(suite)
}

pub fn difference(q: &Quiver, cfg: &OracleConfig) -> Result<Suite, TubeError> {
    let ctx = Context::new(q, 2, cfg)?;
    difference_suite(&ctx)
}

/// The generic regular value against its closed form, `X_{nδ_i} = X_{nδ} + X_{(n-1)δ}` for
/// every regular simple and `n <= 3`, lower-order comparisons in the box `2δ`, and the
/// projective-injective product on the opposite orientation.
pub fn d4_suite(q: &Quiver, cfg: &OracleConfig, v: &VerifyConfig) -> Result<Suite, TubeError> {
    if !is_d4_sink(q) {
        return Err(TubeError::BadParameters("the d4 suite needs the D~4 quiver with a central sink".into()));
    }
    let mut suite = Suite::new("d4");
    let expected = parse(5, D4_GENERIC_VALUE).expect("closed form parses");
    let oracle = cc_map_direct(q, &KindFamily::new(q, ModuleKind::GenericDelta, cfg.seed), cfg)?;
    suite.push(Report::compare("generic_value_oracle", json!({}), &oracle, &expected));
    let bound = delta_multiple(q.delta()?, v.box_multiple.max(2));
    let ctx = Context::for_box(q, &bound, cfg)?;
    suite.push(Report::compare("generic_value_engine", json!({}), &ctx.x_delta(), &expected));
    for t in 0..ctx.tubes().len() {
        let tc = TubeContext::new(&ctx, t)?;
        for i in 1..=tc.rank() {
            for n in 1..=3 {
                let rhs = &x_ndelta(&ctx, n as usize) + &x_ndelta(&ctx, n as usize - 1);
                let params = json!({"tube": ctx.tubes()[t].label, "i": i, "n": n});
                suite.push(Report::compare("tube_delta_splits", params, &tc.x_ndelta_tube(i, n)?, &rhs));
            }
        }
    }
    let cat = BasisCatalog::build(&ctx, &bound, Flavor::Bprime)?;
    for n in 1..=2 {
        suite.extend(compare_delta_variants(&cat, n)?);
    }
    suite.extend(same_dimension_regular(&cat)?);
    suite.extend(projective_injective(cfg)?);
    Ok(suite)
}

/// The projective-injective product on D~4 with a central source.
pub fn projective_injective(cfg: &OracleConfig) -> Result<Vec<Report>, TubeError> {
    let q = builtin("D4tilde_src").expect("builtin");
    let bound = delta_multiple(q.delta()?, 1);
    let ctx = Context::for_box(&q, &bound, cfg)?;
    let cat = BasisCatalog::build(&ctx, &bound, Flavor::Bprime)?;
    projective_injective_product(&cat)
}

/// Kronecker: closed forms, exchange relations along the preprojective component and
/// the square of the generic variable.
pub fn kronecker_suite(q: &Quiver, cfg: &OracleConfig) -> Result<Suite, TubeError> {
    if q.affine_class() != (AffineClass::ATilde { p: 1, q: 1 }) {
        return Err(TubeError::BadParameters("the kronecker suite needs the Kronecker quiver".into()));
    }
    let mut suite = Suite::new("kronecker");
    let ctx = Context::new(q, 6, cfg)?;
    let (source, sink) = if q.is_source(0) { (0, 1) } else { (1, 0) };
    // x_k: x_1, x_2 initial, then X of P(sink), P(source), τ^-1 P(sink), ...
    let mut seq = vec![ctx.x_indec(&Indec::Shift(sink))?, ctx.x_indec(&Indec::Shift(source))?];
    for k in 0..5 {
        seq.push(ctx.x_indec(&Indec::PreProj { vertex: sink, shift: k })?);
        seq.push(ctx.x_indec(&Indec::PreProj { vertex: source, shift: k })?);
    }
    let one = crate::LaurentPolynomial::one(2);
    for k in 1..seq.len() - 1 {
        let lhs = &seq[k - 1] * &seq[k + 1];
        let rhs = &(&seq[k] * &seq[k]) + &one;
        suite.push(Report::compare("exchange_relation", json!({"k": k}), &lhs, &rhs));
    }
    suite.extend(chebyshev_sweep(&ctx, 6)?);
    let bound = delta_multiple(q.delta()?, 2);
    let bctx = Context::for_box(q, &bound, cfg)?;
    let cat = BasisCatalog::build(&bctx, &bound, Flavor::Bprime)?;
    let e = cat.expand(&(&bctx.x_delta() * &bctx.x_delta()))?;
    let pass = e.terms.len() == 2 && e.coefficient(&[2, 2]).is_one() && e.coefficient(&[0, 0]).is_one();
    suite.push(Report::flag("generic_square", json!({"expansion": e.to_json()}), pass));
    Ok(suite)
}

/// Denominators, constant terms (alternating quivers), integrality of random products,
/// and unitriangularity of the transition between the two bases, in the box `box_multiple * δ`.
pub fn basis_suite(q: &Quiver, cfg: &OracleConfig, v: &VerifyConfig) -> Result<Suite, TubeError> {
    let bound = delta_multiple(q.delta()?, v.box_multiple);
    let ctx = Context::for_box(q, &bound, cfg)?;
    let bprime = BasisCatalog::build(&ctx, &bound, Flavor::Bprime)?;
    let bg = BasisCatalog::build(&ctx, &bound, Flavor::Bg)?;
    let mut suite = Suite::new("basis");
    let params = json!({"box": bound});
    suite.extend(denominators(&bprime, v)?);
    if q.is_alternating() {
        suite.push(constant_terms(&bprime, v)?);
    }
    suite.extend(product_pairs(&bprime, v)?);
    let tm = transition_matrix(&bprime, &bg)?;
    let mut p = params.clone();
    p["non_identity_rows"] = json!(tm.non_identity_rows());
    suite.push(Report::flag("transition_unitriangular", p, tm.is_unitriangular()));
    Ok(suite)
}

/// Denominator vector equals the key, over every key of each flavor.
pub fn denominators(cat: &BasisCatalog, v: &VerifyConfig) -> Result<Vec<Report>, TubeError> {
    let keys = cat.keys();
    let bad = par::try_map(v.mode, &keys, |d| -> Result<Option<String>, TubeError> {
        let den = cat.value(d)?.denominator_vector()?;
        Ok((den != *d).then(|| format!("{d:?} -> {den:?}")))
    })?;
    let failures: Vec<String> = bad.into_iter().flatten().collect();
    Ok(vec![summary("denominator_vector", json!({"flavor": format!("{:?}", cat.flavor())}), keys.len(), failures)])
}

/// Constant term of the numerator equals one for every key.
pub fn constant_terms(cat: &BasisCatalog, v: &VerifyConfig) -> Result<Report, TubeError> {
    let keys = cat.keys();
    let bad = par::try_map(v.mode, &keys, |d| -> Result<Option<String>, TubeError> {
        let c = cat.value(d)?.numerator_constant_term()?;
        Ok((!c.is_one()).then(|| format!("{d:?} -> {c}")))
    })?;
    Ok(summary("constant_term", json!({}), keys.len(), bad.into_iter().flatten().collect()))
}

/// Seeded pairs of keys in the sub-box `[-δ, δ]`; each product must expand with integer
/// coefficients and coefficient one at the sum of the keys. `clash` marks pairs where a
/// shift at some vertex meets a module part supported there.
pub fn product_pairs(cat: &BasisCatalog, v: &VerifyConfig) -> Result<Vec<Report>, TubeError> {
    let delta = cat.context().delta().clone();
    let small: Vec<Vec<i64>> =
        cat.keys().into_iter().filter(|d| d.iter().zip(&delta).all(|(x, y)| x.abs() <= *y)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(v.seed);
    let pairs: Vec<(Vec<i64>, Vec<i64>)> = (0..v.pairs)
        .map(|_| (small[rng.gen_range(0..small.len())].clone(), small[rng.gen_range(0..small.len())].clone()))
        .collect();
    par::try_map(v.mode, &pairs, |(a, b)| -> Result<Report, TubeError> {
        let f = &cat.value(a)? * &cat.value(b)?;
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let clash = a.iter().zip(b).any(|(x, y)| x * y < 0);
        let mut params = json!({"left": a, "right": b, "clash": clash});
        Ok(match cat.expand(&f) {
            Ok(e) => {
                let c = e.coefficient(&sum);
                params["coef_at_sum"] = crate::basis::bigint_json(&c);
                params["terms"] = json!(e.terms.len());
                Report::flag("product_expansion", params, c == BigInt::one())
            }
            Err(err) => {
                params["error"] = json!(err.to_string());
                Report::flag("product_expansion", params, false)
            }
        })
    })
}

/// Grassmannian Euler characteristics of the cycle and D~ families.
pub fn grassmannian_suite(cfg: &OracleConfig) -> Result<Suite, TubeError> {
    let mut suite = Suite::new("grassmannian");
    for (p, qlen) in [(1, 2), (2, 2), (2, 3)] {
        suite.push(cycle_splitting(p, qlen, cfg)?);
    }
    for m in [4, 5] {
        suite.extend(d_tilde_family(m, cfg)?);
    }
    Ok(suite)
}

/// Runs `name`; `all` runs every suite that applies to `q`.
pub fn run_suite(name: &str, q: &Quiver, cfg: &OracleConfig, v: &VerifyConfig) -> Result<Vec<Suite>, TubeError> {
    Ok(match name {
        "ar" => vec![ar_suite(q, cfg, v)?],
        "tube" => vec![tube_suite(q, cfg, v)?],
        "difference" => vec![difference(q, cfg)?],
        "d4" => vec![d4_suite(q, cfg, v)?],
        "kronecker" => vec![kronecker_suite(q, cfg)?],
        "basis" => vec![basis_suite(q, cfg, v)?],
        "grassmannian" => vec![grassmannian_suite(cfg)?],
        "all" => {
            let mut out = vec![ar_suite(q, cfg, v)?, tube_suite(q, cfg, v)?, difference(q, cfg)?];
            if is_d4_sink(q) {
                out.push(d4_suite(q, cfg, v)?);
            }
            if q.affine_class() == (AffineClass::ATilde { p: 1, q: 1 }) {
                out.push(kronecker_suite(q, cfg)?);
            }
            out.push(basis_suite(q, cfg, v)?);
            out.push(grassmannian_suite(cfg)?);
            out
        }
        other => return Err(TubeError::BadParameters(format!("unknown suite {other}"))),
    })
}
