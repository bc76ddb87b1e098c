//! Integral bases inside a box of dimension vectors, and expansion in them.
//!
//! Every `d` in the box is the key of exactly one element. Its module part sits at
//! `d⁺ = max(d, 0)` and its shifted projectives at `d⁻ = max(-d, 0)`. The value of
//! the element with key `d` has denominator vector `d`. Expansion is greedy: on
//! alternating quivers through the lexicographically first exponent, which is
//! `x^{-d}` for the lex-largest key present, and in general through the top
//! exponent `x^g` for a grading that separates g-vectors.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cluster::{ClusterObject, Context, Indec};
use crate::error::{BasisError, ClusterError};
use crate::laurent::LaurentPolynomial;
use crate::oracle::{cc_map_direct, KindFamily, ModuleKind};
use crate::par;
use crate::quiver::DimVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Flavor {
    /// Homogeneous part valued by `X_{E[k]}`.
    Bprime,
    /// Homogeneous part valued by `X_δ^k`.
    Bg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ElementKind {
    Rigid,
    /// `E[k] ⊕ R` with `R` regular rigid in non-homogeneous tubes.
    DeltaFamily(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub dim: DimVector,
    pub kind: ElementKind,
    /// Full object; a delta family carries its homogeneous part as `GenericReg(k)`.
    pub object: ClusterObject,
}

impl BasisElement {
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "kind": match self.kind { ElementKind::Rigid => "rigid", ElementKind::DeltaFamily(_) => "delta_family" },
            "summands": self.object.summands.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Nonzero coefficients by key, in descending lexicographic order of keys.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expansion {
    pub terms: Vec<(DimVector, BigInt)>,
}

impl Expansion {
    fn from_map(m: BTreeMap<DimVector, BigInt>) -> Self {
        let mut terms: Vec<_> = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Expansion { terms }
    }

    pub fn coefficient(&self, d: &[i64]) -> BigInt {
        self.terms.iter().find(|(k, _)| k.as_slice() == d).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(d, c)| json!({"dim": d, "coef": bigint_json(c)})).collect())
    }
}

/// Small integers as JSON numbers, the rest as strings.
pub fn bigint_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

/// `a ≺ b`: componentwise `<=` and not equal.
pub fn precedes(a: &[i64], b: &[i64]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x <= y)
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add(a: &[i64], b: &[i64]) -> DimVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All vectors `v` with `lo <= v <= hi`, lexicographically.
pub fn box_vectors(lo: &[i64], hi: &[i64]) -> Vec<DimVector> {
    let mut out = vec![Vec::new()];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out.into_iter().flat_map(|v| (a..=b).map(move |x| {
            let mut w = v.clone();
            w.push(x);
            w
        })).collect();
    }
    out
}

/// Which greedy step an expansion uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    /// Lexicographically first exponent is `x^{-key}`.
    Denominator,
    /// Top exponent under the grading is `x^{g(key)}`.
    GVector,
}

pub struct BasisCatalog<'a> {
    ctx: &'a Context,
    flavor: Flavor,
    bound: DimVector,
    /// Module parts keyed by `d⁺`.
    parts: HashMap<DimVector, BasisElement>,
    part_values: RwLock<HashMap<DimVector, LaurentPolynomial>>,
    /// Integer `ε` with `(R - Rᵀ) ε < 0` componentwise, when one exists.
    grading: Option<Vec<i64>>,
    /// `(g(d⁺), d⁺)` for every module part.
    g_parts: Vec<(DimVector, DimVector)>,
}

impl std::fmt::Debug for BasisCatalog<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasisCatalog").field("flavor", &self.flavor).field("bound", &self.bound).field("parts", &self.parts.len()).finish()
    }
}

/// Perceptron search for `ε` with `(R - Rᵀ) ε < 0`.
pub fn separating_grading(r: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = r.len();
    let rows: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| r[j][i] - r[i][j]).collect()).collect();
    let mut eps = vec![0i64; n];
    for _ in 0..100_000 {
        let bad = rows.iter().find(|a| a.iter().zip(&eps).map(|(x, y)| x * y).sum::<i64>() >= 0);
        match bad {
            None => return Some(eps),
            Some(a) => {
                for (e, x) in eps.iter_mut().zip(a) {
                    *e -= x;
                }
            }
        }
    }
    None
}

impl<'a> BasisCatalog<'a> {
    /// Enumerates the basis with keys in `[-bound, bound]`; `ctx` must knit far enough to see every
    /// preprojective and preinjective module below `bound`.
    pub fn build(ctx: &'a Context, bound: &[i64], flavor: Flavor) -> Result<Self, BasisError> {
        let q = ctx.quiver();
        let n = q.vertex_count();
        if bound.len() != n || bound.iter().any(|&b| b < 0) {
            return Err(BasisError::OutOfBox(bound.to_vec()));
        }
        let candidates: Vec<Indec> = ctx
            .indecomposables(bound, ctx.tubes().iter().map(|t| t.rank).max().unwrap_or(1))
            .into_iter()
            .filter(|m| match m {
                Indec::PreProj { .. } | Indec::PreInj { .. } => true,
                Indec::Tube { tube, len, .. } => *len < ctx.tube_rank(*tube),
                _ => false,
            })
            .collect();
        let dims: Vec<DimVector> = candidates.iter().map(|m| ctx.dim_of(m)).collect();
        let pairs: Vec<(usize, usize)> = (0..candidates.len()).flat_map(|a| (a..candidates.len()).map(move |b| (a, b))).collect();
        let exts = par::try_map(ctx.config().mode, &pairs, |&(a, b)| ctx.ext1_cc_dim(&candidates[a], &candidates[b]))?;
        let mut compatible = vec![vec![false; candidates.len()]; candidates.len()];
        for (&(a, b), e) in pairs.iter().zip(exts) {
            compatible[a][b] = e == 0;
            compatible[b][a] = e == 0;
        }
        if let Some(a) = (0..candidates.len()).find(|&a| !compatible[a][a]) {
            return Err(ClusterError::Internal(format!("{} is not rigid", candidates[a])).into());
        }

        let mut rigid: Vec<(Vec<usize>, DimVector)> = Vec::new();
        let mut stack: Vec<(Vec<usize>, DimVector)> = vec![(Vec::new(), vec![0; n])];
        while let Some((chosen, d)) = stack.pop() {
            let start = chosen.last().copied().unwrap_or(0);
            for c in start..candidates.len() {
                let nd = add(&d, &dims[c]);
                if leq(&nd, bound) && chosen.iter().all(|&x| compatible[x][c]) {
                    let mut next = chosen.clone();
                    next.push(c);
                    stack.push((next, nd));
                }
            }
            rigid.push((chosen, d));
        }

        let mut parts = HashMap::new();
        let mut insert = |e: BasisElement| -> Result<(), BasisError> {
            if parts.contains_key(&e.dim) {
                return Err(BasisError::DuplicateDimension(e.dim));
            }
            parts.insert(e.dim.clone(), e);
            Ok(())
        };
        let delta = ctx.delta().clone();
        for (chosen, d) in &rigid {
            let object = ClusterObject::new(chosen.iter().map(|&c| candidates[c].clone()).collect());
            if chosen.iter().all(|&c| candidates[c].is_regular()) {
                let mut k = 1;
                loop {
                    let dk = add(d, &delta.iter().map(|x| x * k as i64).collect::<Vec<_>>());
                    if !leq(&dk, bound) {
                        break;
                    }
                    if !chosen.is_empty() && d.iter().zip(&delta).all(|(a, b)| a * delta[0] == b * d[0]) {
                        return Err(ClusterError::Internal(format!("delta family with regular part at multiple of delta {dk:?}")).into());
                    }
                    let object = object.sum(&ClusterObject::single(Indec::GenericReg(k)));
                    insert(BasisElement { dim: dk, kind: ElementKind::DeltaFamily(k), object })?;
                    k += 1;
                }
            }
            insert(BasisElement { dim: d.clone(), kind: ElementKind::Rigid, object })?;
        }
        for d in box_vectors(&vec![0; n], bound) {
            if !parts.contains_key(&d) {
                return Err(BasisError::IncompleteBox(d));
            }
        }

        let grading = separating_grading(q.r_matrix());
        let mut cat = BasisCatalog {
            ctx,
            flavor,
            bound: bound.to_vec(),
            parts,
            part_values: RwLock::new(HashMap::new()),
            grading,
            g_parts: Vec::new(),
        };
        if cat.grading.is_some() {
            let mut seen = HashMap::new();
            for d in cat.keys() {
                let g = cat.g_vector(&d);
                if let Some(prev) = seen.insert(g, d.clone()) {
                    return Err(ClusterError::Internal(format!("keys {prev:?} and {d:?} share a g-vector")).into());
                }
            }
            let mut parts: Vec<DimVector> = cat.parts.keys().cloned().collect();
            parts.sort();
            cat.g_parts = parts.into_iter().map(|p| (cat.g_vector(&p), p)).collect();
        }
        Ok(cat)
    }

    pub fn context(&self) -> &'a Context {
        self.ctx
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn bound(&self) -> &[i64] {
        &self.bound
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    /// True for `d ∈ [-bound, bound]`.
    pub fn in_box(&self, d: &[i64]) -> bool {
        d.len() == self.bound.len() && d.iter().zip(&self.bound).all(|(x, b)| -b <= *x && x <= b)
    }

    /// True when `d⁺ <= bound`; the shifted part of a key is unconstrained.
    pub fn covers(&self, d: &[i64]) -> bool {
        d.len() == self.bound.len() && d.iter().zip(&self.bound).all(|(x, b)| x <= b)
    }

    /// All keys, lexicographically.
    pub fn keys(&self) -> Vec<DimVector> {
        let lo: Vec<i64> = self.bound.iter().map(|b| -b).collect();
        box_vectors(&lo, &self.bound)
    }

    /// Module parts, lexicographically.
    pub fn module_parts(&self) -> Vec<&BasisElement> {
        let mut v: Vec<_> = self.parts.values().collect();
        v.sort_by(|a, b| a.dim.cmp(&b.dim));
        v
    }

    pub fn element_from_dimension(&self, d: &[i64]) -> Result<BasisElement, BasisError> {
        if !self.covers(d) {
            return Err(BasisError::OutOfBox(d.to_vec()));
        }
        let plus: DimVector = d.iter().map(|&x| x.max(0)).collect();
        let part = &self.parts[&plus];
        let mut summands = part.object.summands.clone();
        for (i, &x) in d.iter().enumerate() {
            for _ in 0..(-x).max(0) {
                summands.push(Indec::Shift(i));
            }
        }
        Ok(BasisElement { dim: d.to_vec(), kind: part.kind, object: ClusterObject::new(summands) })
    }

    fn part_value(&self, plus: &DimVector) -> Result<LaurentPolynomial, BasisError> {
        if let Some(v) = self.part_values.read().unwrap().get(plus) {
            return Ok(v.clone());
        }
        let part = &self.parts[plus];
        let v = match (self.flavor, part.kind) {
            (Flavor::Bg, ElementKind::DeltaFamily(k)) => {
                let rest = ClusterObject::new(part.object.summands.iter().filter(|m| !matches!(m, Indec::GenericReg(_))).cloned().collect());
                &self.ctx.x_delta().pow(k as u32) * &self.ctx.x_of(&rest)?
            }
            _ => self.ctx.x_of(&part.object)?,
        };
        self.part_values.write().unwrap().insert(plus.clone(), v.clone());
        Ok(v)
    }

    /// Value of the element with key `d`.
    pub fn value(&self, d: &[i64]) -> Result<LaurentPolynomial, BasisError> {
        if !self.covers(d) {
            return Err(BasisError::OutOfBox(d.to_vec()));
        }
        let plus: DimVector = d.iter().map(|&x| x.max(0)).collect();
        let minus: DimVector = d.iter().map(|&x| (-x).max(0)).collect();
        Ok(self.part_value(&plus)?.mul_term(&minus, &BigInt::one()))
    }

    /// `g = (R - I) d⁺ + d⁻`, the exponent of the top term.
    pub fn g_vector(&self, d: &[i64]) -> DimVector {
        let r = self.ctx.quiver().r_matrix();
        let n = d.len();
        (0..n)
            .map(|j| {
                let mut g = -d[j].max(0) + (-d[j]).max(0);
                for i in 0..n {
                    g += r[j][i] * d[i].max(0);
                }
                g
            })
            .collect()
    }

    /// The key `d` with `g(d) = g`: `g - g(d⁺)` must be nonnegative and vanish on the support of `d⁺`.
    fn key_of_g(&self, g: &[i64]) -> Result<DimVector, BasisError> {
        let mut found = None;
        for (gp, p) in &self.g_parts {
            let rest: DimVector = g.iter().zip(gp).map(|(a, b)| a - b).collect();
            if rest.iter().zip(p).all(|(&m, &x)| m >= 0 && (m == 0 || x == 0)) {
                if found.is_some() {
                    return Err(ClusterError::Internal(format!("two keys with g-vector {g:?}")).into());
                }
                found = Some(p.iter().zip(&rest).map(|(x, m)| x - m).collect());
            }
        }
        found.ok_or_else(|| BasisError::NotInSpan(g.to_vec()))
    }

    /// The route used by [`expand`](Self::expand): denominators on alternating quivers
    /// and when no grading exists, g-vectors otherwise.
    pub fn primary_route(&self) -> Route {
        if self.ctx.quiver().is_alternating() || self.grading.is_none() {
            Route::Denominator
        } else {
            Route::GVector
        }
    }

    /// Expands `f` along the primary route; where both routes apply they must agree.
    pub fn expand(&self, f: &LaurentPolynomial) -> Result<Expansion, BasisError> {
        let primary = self.expand_with(f, self.primary_route())?;
        if self.primary_route() == Route::Denominator && self.grading.is_some() {
            let other = self.expand_with(f, Route::GVector)?;
            if other != primary {
                return Err(BasisError::NotTriangular("denominator and g-vector expansions differ".into()));
            }
        }
        Ok(primary)
    }

    pub fn expand_with(&self, f: &LaurentPolynomial, route: Route) -> Result<Expansion, BasisError> {
        let mut rem = f.clone();
        let mut out = BTreeMap::new();
        let mut steps = 0usize;
        while !rem.is_zero() {
            steps += 1;
            if steps > 1_000_000 {
                return Err(BasisError::NotTriangular("expansion does not terminate".into()));
            }
            let leads: Vec<(DimVector, DimVector, BigInt)> = match route {
                Route::Denominator => {
                    let (e, c) = rem.lex_first().expect("nonzero");
                    let key: DimVector = e.iter().map(|x| -x).collect();
                    if !self.covers(&key) {
                        return Err(BasisError::NotInSpan(key));
                    }
                    vec![(key, e.clone(), c.clone())]
                }
                Route::GVector => {
                    let eps = self.grading.as_ref().ok_or(BasisError::NotGraded)?;
                    let level = |e: &[i64]| e.iter().zip(eps).map(|(a, b)| a * b).sum::<i64>();
                    let top = rem.terms().keys().map(|e| level(e)).max().expect("nonzero");
                    let mut v = Vec::new();
                    for (e, c) in rem.terms() {
                        if level(e) == top {
                            v.push((self.key_of_g(e)?, e.clone(), c.clone()));
                        }
                    }
                    v
                }
            };
            for (key, e, c) in leads {
                let value = self.value(&key)?;
                let lead = value.coefficient(&e);
                let (q, r) = c.div_rem(&lead);
                if lead.is_zero() || !r.is_zero() {
                    return Err(BasisError::NonIntegerLeading { key, detail: format!("{c} / {lead}") });
                }
                for (x, y) in value.terms() {
                    rem.add_term(x.clone(), -(&q * y));
                }
                let slot = out.entry(key).or_insert_with(BigInt::zero);
                *slot += q;
            }
        }
        Ok(Expansion::from_map(out))
    }

    pub fn to_json(&self) -> Result<Value, BasisError> {
        Ok(Value::Array(self.keys().iter().map(|d| self.element_from_dimension(d).map(|e| e.to_json())).collect::<Result<_, _>>()?))
    }
}

/// Sparse unitriangular matrix: row `d` expands the `B_g` element at `d` in `B'`.
#[derive(Debug, Clone, Default)]
pub struct TransitionMatrix {
    pub rows: BTreeMap<DimVector, Expansion>,
}

impl TransitionMatrix {
    /// Diagonal one, every other entry at a key strictly below the row key.
    pub fn is_unitriangular(&self) -> bool {
        self.rows.iter().all(|(d, row)| {
            row.coefficient(d).is_one() && row.terms.iter().all(|(k, _)| k == d || precedes(k, d))
        })
    }

    pub fn non_identity_rows(&self) -> usize {
        self.rows.iter().filter(|(d, row)| row.terms.len() != 1 || row.terms[0].0 != **d).count()
    }
}

/// Expands every `B_g` element in `B'`. Rigid rows are the identity by construction,
/// which is checked on the objects.
pub fn transition_matrix(bprime: &BasisCatalog, bg: &BasisCatalog) -> Result<TransitionMatrix, BasisError> {
    if bprime.flavor != Flavor::Bprime || bg.flavor != Flavor::Bg || bprime.bound != bg.bound {
        return Err(BasisError::NotTriangular("transition needs B' and B_g on one box".into()));
    }
    let keys = bg.keys();
    let rows = par::try_map(bg.ctx.config().mode, &keys, |d| -> Result<Expansion, BasisError> {
        let e = bg.element_from_dimension(d)?;
        let f = bprime.element_from_dimension(d)?;
        if e.object != f.object {
            return Err(BasisError::NotTriangular(format!("catalogs disagree at {d:?}")));
        }
        match e.kind {
            ElementKind::Rigid => Ok(Expansion { terms: vec![(d.clone(), BigInt::one())] }),
            ElementKind::DeltaFamily(_) => bprime.expand(&bg.value(d)?),
        }
    })?;
    Ok(TransitionMatrix { rows: keys.into_iter().zip(rows).collect() })
}

/// `Π X_{S_i}^{d_i⁺} x_i^{d_i⁻}` expanded in the catalog; the simples come from the oracle.
pub fn monomial_expand(cat: &BasisCatalog, d: &[i64]) -> Result<(Expansion, bool), BasisError> {
    let ctx = cat.ctx;
    let q = ctx.quiver();
    let n = q.vertex_count();
    let mut f = LaurentPolynomial::one(n);
    for (i, &x) in d.iter().enumerate() {
        if x > 0 {
            let s = cc_map_direct(q, &KindFamily::new(q, ModuleKind::Exceptional(q.unit(i)), ctx.config().seed), ctx.config())?;
            f = &f * &s.pow(x as u32);
        }
    }
    let minus: DimVector = d.iter().map(|&x| (-x).max(0)).collect();
    let f = f.mul_term(&minus, &BigInt::one());
    let e = cat.expand(&f)?;
    let ok = e.coefficient(d).is_one() && e.terms.iter().all(|(k, _)| k.as_slice() == d || precedes(k, d));
    Ok((e, ok))
}

/// `kδ`.
pub fn delta_multiple(delta: &[i64], k: i64) -> DimVector {
    delta.iter().map(|x| x * k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse;
    use crate::oracle::OracleConfig;
    use crate::quiver::builtin;

    fn ctx_for(name: &str, k: i64) -> Context {
        let q = builtin(name).unwrap();
        let b = delta_multiple(q.delta().unwrap(), k);
        Context::for_box(&q, &b, &OracleConfig::default()).unwrap()
    }

    #[test]
    fn kronecker_catalog_and_square_of_delta() {
        let ctx = ctx_for("kronecker", 2);
        let cat = BasisCatalog::build(&ctx, &[2, 2], Flavor::Bprime).unwrap();
        assert_eq!(cat.keys().len(), 25);
        assert_eq!(cat.element_from_dimension(&[1, 1]).unwrap().kind, ElementKind::DeltaFamily(1));
        assert_eq!(cat.element_from_dimension(&[2, 2]).unwrap().kind, ElementKind::DeltaFamily(2));
        let e = cat.element_from_dimension(&[-1, -1]).unwrap();
        assert_eq!(e.object, ClusterObject::new(vec![Indec::Shift(0), Indec::Shift(1)]));
        let p2 = cat.element_from_dimension(&[0, 1]).unwrap();
        assert_eq!(p2.kind, ElementKind::Rigid);
        assert_eq!(p2.object, ClusterObject::single(Indec::PreProj { vertex: 1, shift: 0 }));
        let xd = ctx.x_delta();
        let e = cat.expand(&(&xd * &xd)).unwrap();
        assert_eq!(e.terms, vec![(vec![2, 2], BigInt::from(1)), (vec![0, 0], BigInt::from(1))]);
        let e = cat.expand(&LaurentPolynomial::var(2, 1)).unwrap();
        assert_eq!(e.terms, vec![(vec![0, -1], BigInt::from(1))]);
    }

    #[test]
    fn empty_box() {
        let ctx = ctx_for("kronecker", 1);
        let cat = BasisCatalog::build(&ctx, &[0, 0], Flavor::Bprime).unwrap();
        assert_eq!(cat.keys(), vec![vec![0, 0]]);
        assert!(cat.element_from_dimension(&[0, 0]).unwrap().object.is_zero());
        assert_eq!(cat.value(&[0, 0]).unwrap(), LaurentPolynomial::one(2));
        assert!(matches!(cat.element_from_dimension(&[1, 0]), Err(BasisError::OutOfBox(_))));
    }

    #[test]
    fn kronecker_transition() {
        let ctx = ctx_for("kronecker", 2);
        let bp = BasisCatalog::build(&ctx, &[2, 2], Flavor::Bprime).unwrap();
        let bg = BasisCatalog::build(&ctx, &[2, 2], Flavor::Bg).unwrap();
        let t = transition_matrix(&bp, &bg).unwrap();
        assert!(t.is_unitriangular());
        assert_eq!(t.rows[&vec![2, 2]].terms, vec![(vec![2, 2], BigInt::from(1)), (vec![0, 0], BigInt::from(1))]);
        assert_eq!(t.non_identity_rows(), 1);
    }

    #[test]
    fn d4_keys_and_tube_product() {
        let ctx = ctx_for("D4tilde", 1);
        let delta = ctx.delta().clone();
        let cat = BasisCatalog::build(&ctx, &delta, Flavor::Bprime).unwrap();
        assert_eq!(cat.element_from_dimension(&delta).unwrap().kind, ElementKind::DeltaFamily(1));
        let t = &ctx.tubes()[0];
        let e1 = cat.element_from_dimension(&t.simples[0]).unwrap();
        assert_eq!(e1.object, ClusterObject::single(Indec::Tube { tube: 0, socle: 0, len: 1 }));
        let f = &ctx.tube_value(0, 0, 1) * &ctx.tube_value(0, 1, 1);
        let e = cat.expand(&f).unwrap();
        assert_eq!(e.terms, vec![(delta.clone(), BigInt::from(1)), (vec![0; 5], BigInt::from(2))]);
    }

    #[test]
    fn monomials_lead_with_their_exponent() {
        let ctx = ctx_for("kronecker", 2);
        let cat = BasisCatalog::build(&ctx, &[2, 2], Flavor::Bprime).unwrap();
        for d in [[1, 1], [0, 1], [-1, 0], [1, -1]] {
            let (_, ok) = monomial_expand(&cat, &d).unwrap();
            assert!(ok, "{d:?}");
        }
        assert_eq!(cat.value(&[0, 1]).unwrap(), parse(2, "(x1^2+1)/x2").unwrap());
    }

    #[test]
    fn grading_separates() {
        for name in ["kronecker", "A22tilde", "D4tilde"] {
            let q = builtin(name).unwrap();
            assert!(separating_grading(q.r_matrix()).is_some(), "{name}");
        }
    }
}
