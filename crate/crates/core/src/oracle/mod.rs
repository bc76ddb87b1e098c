//! Explicit representations over prime fields and the definitional cluster character.
//!
//! Euler characteristics of quiver Grassmannians come from point counts over
//! several primes, interpolated to a polynomial in `q` and evaluated at `q = 1`.

mod construct;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use construct::*;

use crate::error::OracleError;
use crate::gf::{self, Mat, Subspace};
use crate::laurent::LaurentPolynomial;
use crate::par::{self, ExecMode};
use crate::quiver::{DimVector, Quiver};

/// A representation of a quiver shape over `GF(prime)`.
///
/// The shape may contain oriented cycles; cyclic shapes model tubes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub prime: u64,
    pub dims: Vec<usize>,
    /// `matrices[a]` has shape `dims[target] x dims[source]`.
    pub matrices: Vec<Mat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub prime: u64,
    pub dims: Vec<usize>,
    /// Keyed by 1-based arrow position.
    pub matrices: BTreeMap<String, Vec<Vec<u64>>>,
}

impl Representation {
    pub fn zero_on(q: &Quiver, prime: u64) -> Self {
        Self::zero_shape(q.vertex_count(), q.arrows().to_vec(), prime)
    }

    pub fn zero_shape(vertices: usize, arrows: Vec<(usize, usize)>, prime: u64) -> Self {
        let matrices = arrows.iter().map(|_| Mat::zeros(0, 0)).collect();
        Representation { vertices, arrows, prime, dims: vec![0; vertices], matrices }
    }

    /// Builds a representation from integer matrices reduced mod `prime`.
    pub fn from_integer_matrices(
        q: &Quiver,
        prime: u64,
        dims: &[usize],
        matrices: &[Vec<Vec<i64>>],
    ) -> Self {
        let mats = q
            .arrows()
            .iter()
            .zip(matrices)
            .map(|(&(s, t), m)| {
                let mut out = Mat::zeros(dims[t], dims[s]);
                for (i, row) in m.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        out.set(i, j, v.rem_euclid(prime as i64) as u64);
                    }
                }
                out
            })
            .collect();
        Representation {
            vertices: q.vertex_count(),
            arrows: q.arrows().to_vec(),
            prime,
            dims: dims.to_vec(),
            matrices: mats,
        }
    }

    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            prime: self.prime,
            dims: self.dims.clone(),
            matrices: self
                .matrices
                .iter()
                .enumerate()
                .map(|(a, m)| ((a + 1).to_string(), m.to_rows()))
                .collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<(), OracleError> {
        if self.vertices != other.vertices || self.arrows != other.arrows {
            return Err(OracleError::QuiverMismatch);
        }
        if self.prime != other.prime {
            return Err(OracleError::PrimeMismatch);
        }
        Ok(())
    }
}

/// Draws every matrix entry uniformly from `GF(p)`.
pub fn random_representation(
    q: &Quiver,
    d: &[i64],
    p: u64,
    seed: u64,
) -> Result<Representation, OracleError> {
    if d.iter().any(|&x| x < 0) {
        return Err(OracleError::NegativeDim);
    }
    Ok(random_on_shape(q.vertex_count(), q.arrows(), d, p, seed))
}

pub(crate) fn random_on_shape(
    vertices: usize,
    arrows: &[(usize, usize)],
    d: &[i64],
    p: u64,
    seed: u64,
) -> Representation {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = d.iter().map(|&x| x as usize).collect();
    let matrices = arrows
        .iter()
        .map(|&(s, t)| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for x in m.data.iter_mut() {
                *x = rng.gen_range(0..p);
            }
            m
        })
        .collect();
    Representation { vertices, arrows: arrows.to_vec(), prime: p, dims, matrices }
}

/// Dimension of the space of intertwiners `M -> N`.
pub fn hom_dimension(m: &Representation, n: &Representation) -> Result<usize, OracleError> {
    m.same_shape(n)?;
    let p = m.prime;
    // Unknown f_v is a dims_N[v] x dims_M[v] block.
    let mut offset = vec![0usize; m.vertices + 1];
    for v in 0..m.vertices {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[m.vertices];
    if unknowns == 0 {
        return Ok(0);
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (a, &(s, t)) in m.arrows.iter().enumerate() {
        let (ma, na) = (&m.matrices[a], &n.matrices[a]);
        // (N_a f_s - f_t M_a)[i][j] = 0 for i < dN_t, j < dM_s.
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0u64; unknowns];
                for c in 0..n.dims[s] {
                    let idx = offset[s] + c * m.dims[s] + j;
                    row[idx] = (row[idx] + na.get(i, c)) % p;
                }
                for c in 0..m.dims[t] {
                    let idx = offset[t] + i * m.dims[t] + c;
                    row[idx] = (row[idx] + p - ma.get(c, j)) % p;
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(unknowns - gf::rank(&rows, p))
}

/// Enumeration limits for brute-force subspace counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCap {
    pub total: usize,
    pub per_vertex: usize,
}

impl Default for EnumCap {
    fn default() -> Self {
        EnumCap { total: 8, per_vertex: 3 }
    }
}

impl EnumCap {
    pub fn check(&self, d: &[usize]) -> Result<(), OracleError> {
        if d.iter().sum::<usize>() > self.total || d.iter().any(|&x| x > self.per_vertex) {
            return Err(OracleError::TooLarge {
                d: d.iter().map(|&x| x as i64).collect(),
                total: self.total,
                per_vertex: self.per_vertex,
            });
        }
        Ok(())
    }
}

/// Number of subrepresentations of `m` with dimension vector `e`.
pub fn count_subrepresentations(m: &Representation, e: &[i64]) -> Result<u64, OracleError> {
    if e.len() != m.vertices || e.iter().zip(&m.dims).any(|(&x, &d)| x < 0 || x as usize > d) {
        return Err(OracleError::BadDims { e: e.to_vec(), d: m.dim_vector() });
    }
    let want: Vec<usize> = e.iter().map(|&x| x as usize).collect();
    Ok(count_tuples(m, Some(&want)).get(&want).copied().unwrap_or(0))
}

/// Point counts of every quiver Grassmannian of `m` at once.
pub fn count_all_subrepresentations(m: &Representation) -> BTreeMap<Vec<usize>, u64> {
    count_tuples(m, None)
}

fn count_tuples(m: &Representation, only: Option<&[usize]>) -> BTreeMap<Vec<usize>, u64> {
    let p = m.prime;
    let n = m.vertices;
    let choices: Vec<Vec<Subspace>> = (0..n)
        .map(|v| match only {
            Some(e) => gf::subspaces(m.dims[v], e[v], p),
            None => (0..=m.dims[v]).flat_map(|k| gf::subspaces(m.dims[v], k, p)).collect(),
        })
        .collect();
    // Vertices in increasing order; an arrow is checked once both ends are placed.
    let checks: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..m.arrows.len())
                .filter(|&a| {
                    let (s, t) = m.arrows[a];
                    s.max(t) == v
                })
                .collect()
        })
        .collect();
    let mut tally = BTreeMap::new();
    let mut picked: Vec<usize> = vec![0; n];
    let mut dims = vec![0usize; n];
    descend(m, &choices, &checks, 0, &mut picked, &mut dims, &mut tally);
    tally
}

fn descend(
    m: &Representation,
    choices: &[Vec<Subspace>],
    checks: &[Vec<usize>],
    v: usize,
    picked: &mut Vec<usize>,
    dims: &mut Vec<usize>,
    tally: &mut BTreeMap<Vec<usize>, u64>,
) {
    if v == m.vertices {
        *tally.entry(dims.clone()).or_insert(0) += 1;
        return;
    }
    for (k, u) in choices[v].iter().enumerate() {
        picked[v] = k;
        let ok = checks[v].iter().all(|&a| {
            let (s, t) = m.arrows[a];
            let us = if s == v { u } else { &choices[s][picked[s]] };
            let ut = if t == v { u } else { &choices[t][picked[t]] };
            us.basis.iter().all(|b| ut.contains(&m.matrices[a].apply(b, m.prime), m.prime))
        });
        if ok {
            dims[v] = u.dim();
            descend(m, choices, checks, v + 1, picked, dims, tally);
        }
    }
}

/// An integer polynomial in `q`, fitted to point counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingPolynomial {
    pub coefficients: Vec<BigInt>,
    pub degree_bound: usize,
    pub samples: Vec<(u64, u64)>,
}

impl CountingPolynomial {
    pub fn eval(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    pub fn euler_characteristic(&self) -> BigInt {
        self.eval(1)
    }
}

/// Lagrange interpolation through the first `degree_bound + 1` samples, checked on the rest.
pub fn fit_counting_polynomial(
    e: &[i64],
    degree_bound: usize,
    samples: &[(u64, u64)],
) -> Result<CountingPolynomial, OracleError> {
    let need = degree_bound + 2;
    if samples.len() < need {
        return Err(OracleError::NotEnoughPrimes { need, have: samples.len() });
    }
    let fit = &samples[..=degree_bound];
    let mut coeffs = vec![BigRational::zero(); degree_bound + 1];
    for (i, &(xi, yi)) in fit.iter().enumerate() {
        // Basis polynomial prod_{j != i} (q - x_j) / (x_i - x_j).
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in fit.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(BigInt::from(xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi as i64 - xj as i64));
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    if coeffs.iter().any(|c| !c.is_integer()) {
        return Err(OracleError::NotPolynomialCount { e: e.to_vec() });
    }
    let mut coefficients: Vec<BigInt> = coeffs.into_iter().map(|c| c.to_integer()).collect();
    while coefficients.len() > 1 && coefficients.last().unwrap().is_zero() {
        coefficients.pop();
    }
    let poly = CountingPolynomial { coefficients, degree_bound, samples: samples.to_vec() };
    for &(x, y) in &samples[degree_bound + 1..] {
        if poly.eval(x as i64) != BigInt::from(y) {
            return Err(OracleError::NotPolynomialCount { e: e.to_vec() });
        }
    }
    Ok(poly)
}

/// Settings shared by every oracle computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub seed: u64,
    /// Overrides the automatic prime ladder when set.
    pub primes: Option<Vec<u64>>,
    pub cap: EnumCap,
    pub retries: usize,
    pub mode: ExecMode,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { seed: 1, primes: None, cap: EnumCap::default(), retries: 128, mode: ExecMode::Parallel }
    }
}

impl OracleConfig {
    fn ladder(&self, min_prime: u64, count: usize) -> Vec<u64> {
        match &self.primes {
            Some(ps) => ps.iter().copied().filter(|&p| p >= min_prime).collect(),
            None => gf::primes_from(min_prime, count),
        }
    }
}

/// A module given over every prime field, e.g. a reduction of an integral representation.
pub trait ModuleFamily: Sync {
    fn dims(&self) -> Vec<usize>;
    fn at_prime(&self, p: u64) -> Result<Representation, OracleError>;
    /// Smallest prime at which the module is defined.
    fn min_prime(&self) -> u64 {
        2
    }
}

/// Family built from a closure.
pub struct FnFamily<F> {
    pub dims: Vec<usize>,
    pub min_prime: u64,
    pub build: F,
}

impl<F> ModuleFamily for FnFamily<F>
where
    F: Fn(u64) -> Result<Representation, OracleError> + Sync,
{
    fn dims(&self) -> Vec<usize> {
        self.dims.clone()
    }
    fn at_prime(&self, p: u64) -> Result<Representation, OracleError> {
        (self.build)(p)
    }
    fn min_prime(&self) -> u64 {
        self.min_prime
    }
}

pub fn grassmannian_degree_bound(d: &[usize], e: &[usize]) -> usize {
    d.iter().zip(e).map(|(&a, &b)| b * (a - b)).sum()
}

fn all_subvectors(d: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &x in d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=x).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Counting polynomials of all quiver Grassmannians of a family.
pub fn counting_polynomials(
    family: &dyn ModuleFamily,
    cfg: &OracleConfig,
) -> Result<BTreeMap<Vec<usize>, CountingPolynomial>, OracleError> {
    let d = family.dims();
    cfg.cap.check(&d)?;
    let es = all_subvectors(&d);
    let max_deg = es.iter().map(|e| grassmannian_degree_bound(&d, e)).max().unwrap_or(0);
    let primes = cfg.ladder(family.min_prime(), max_deg + 2);
    if primes.len() < max_deg + 2 {
        return Err(OracleError::NotEnoughPrimes { need: max_deg + 2, have: primes.len() });
    }
    let tallies = par::try_map(cfg.mode, &primes, |&p| {
        let rep = family.at_prime(p)?;
        if rep.dims != d {
            return Err(OracleError::BadDims { e: rep.dim_vector(), d: d.iter().map(|&x| x as i64).collect() });
        }
        Ok(count_all_subrepresentations(&rep))
    })?;
    let mut out = BTreeMap::new();
    for e in es {
        let samples: Vec<(u64, u64)> = primes
            .iter()
            .zip(&tallies)
            .map(|(&p, t)| (p, t.get(&e).copied().unwrap_or(0)))
            .collect();
        let ei: Vec<i64> = e.iter().map(|&x| x as i64).collect();
        let poly = fit_counting_polynomial(&ei, grassmannian_degree_bound(&d, &e), &samples)?;
        out.insert(e, poly);
    }
    Ok(out)
}

/// `χ(Gr_e(M))` for a single `e`.
pub fn euler_characteristic(
    family: &dyn ModuleFamily,
    e: &[i64],
    cfg: &OracleConfig,
) -> Result<BigInt, OracleError> {
    Ok(counting_polynomial(family, e, cfg)?.euler_characteristic())
}

/// Point counts of `Gr_e(M)` over the prime ladder and the polynomial through them.
pub fn counting_polynomial(
    family: &dyn ModuleFamily,
    e: &[i64],
    cfg: &OracleConfig,
) -> Result<CountingPolynomial, OracleError> {
    let d = family.dims();
    if e.len() != d.len() || e.iter().zip(&d).any(|(&x, &y)| x < 0 || x as usize > y) {
        return Err(OracleError::BadDims { e: e.to_vec(), d: d.iter().map(|&x| x as i64).collect() });
    }
    let eu: Vec<usize> = e.iter().map(|&x| x as usize).collect();
    cfg.cap.check(&d)?;
    let deg = grassmannian_degree_bound(&d, &eu);
    let primes = cfg.ladder(family.min_prime(), deg + 2);
    let samples = par::try_map(cfg.mode, &primes, |&p| {
        Ok::<_, OracleError>((p, count_subrepresentations(&family.at_prime(p)?, e)?))
    })?;
    fit_counting_polynomial(e, deg, &samples)
}

/// Euler characteristics of all quiver Grassmannians, keyed by `e`.
pub fn euler_characteristics(
    family: &dyn ModuleFamily,
    cfg: &OracleConfig,
) -> Result<BTreeMap<Vec<usize>, BigInt>, OracleError> {
    Ok(counting_polynomials(family, cfg)?
        .into_iter()
        .map(|(e, poly)| (e, poly.euler_characteristic()))
        .collect())
}

/// Exponent `eR + (d - e)R^T - d` of the summand indexed by `e`.
pub fn cc_exponent(q: &Quiver, d: &[i64], e: &[i64]) -> Vec<i64> {
    let n = q.vertex_count();
    let r = q.r_matrix();
    (0..n)
        .map(|j| {
            let mut s = -d[j];
            for i in 0..n {
                s += e[i] * r[i][j] + (d[i] - e[i]) * r[j][i];
            }
            s
        })
        .collect()
}

/// `X_M = Σ_e χ(Gr_e(M)) x^{eR + (d-e)R^T - d}`.
pub fn cc_map_direct(
    q: &Quiver,
    family: &dyn ModuleFamily,
    cfg: &OracleConfig,
) -> Result<LaurentPolynomial, OracleError> {
    let chis = euler_characteristics(family, cfg)?;
    Ok(cc_from_characteristics(q, &family.dims(), &chis))
}

pub fn cc_from_characteristics(
    q: &Quiver,
    dims: &[usize],
    chis: &BTreeMap<Vec<usize>, BigInt>,
) -> LaurentPolynomial {
    let d: Vec<i64> = dims.iter().map(|&x| x as i64).collect();
    let mut x = LaurentPolynomial::zero(q.vertex_count());
    for (e, chi) in chis {
        let ei: Vec<i64> = e.iter().map(|&v| v as i64).collect();
        x.add_term(cc_exponent(q, &d, &ei), chi.clone());
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::builtin;

    #[test]
    fn interpolation_recovers_q_plus_one() {
        let samples: Vec<(u64, u64)> = [2u64, 3, 5].iter().map(|&p| (p, p + 1)).collect();
        let poly = fit_counting_polynomial(&[1], 1, &samples).unwrap();
        assert_eq!(poly.coefficients, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(poly.euler_characteristic(), BigInt::from(2));
    }

    #[test]
    fn held_out_prime_rejects_non_polynomial_data() {
        let samples = vec![(2, 3), (3, 4), (5, 7)];
        assert!(matches!(
            fit_counting_polynomial(&[1], 1, &samples),
            Err(OracleError::NotPolynomialCount { .. })
        ));
    }

    #[test]
    fn hom_between_kronecker_bands() {
        let q = builtin("kronecker").unwrap();
        let m = Representation::from_integer_matrices(&q, 7, &[1, 1], &[vec![vec![1]], vec![vec![2]]]);
        let n = Representation::from_integer_matrices(&q, 7, &[1, 1], &[vec![vec![1]], vec![vec![3]]]);
        assert_eq!(hom_dimension(&m, &n).unwrap(), 0);
        assert_eq!(hom_dimension(&m, &m).unwrap(), 1);
    }

    #[test]
    fn kronecker_band_has_no_submodule_at_source() {
        let q = builtin("kronecker").unwrap();
        let m = Representation::from_integer_matrices(&q, 5, &[1, 1], &[vec![vec![1]], vec![vec![2]]]);
        assert_eq!(count_subrepresentations(&m, &[1, 0]).unwrap(), 0);
        assert_eq!(count_subrepresentations(&m, &[0, 1]).unwrap(), 1);
        assert_eq!(count_subrepresentations(&m, &[0, 0]).unwrap(), 1);
        assert_eq!(count_subrepresentations(&m, &[1, 1]).unwrap(), 1);
    }

    #[test]
    fn random_representations_are_seeded() {
        let q = builtin("kronecker").unwrap();
        let a = random_representation(&q, &[1, 1], 5, 42).unwrap();
        let b = random_representation(&q, &[1, 1], 5, 42).unwrap();
        assert_eq!(a, b);
        let z = random_representation(&q, &[0, 0], 5, 1).unwrap();
        assert_eq!(z.total_dim(), 0);
        assert_eq!(random_representation(&q, &[-1, 0], 5, 1), Err(OracleError::NegativeDim));
        let big = random_representation(&q, &[3, 3], 101, 0).unwrap();
        let differing = (1..=20)
            .filter(|&s| random_representation(&q, &[3, 3], 101, s).unwrap() != big)
            .count();
        assert_eq!(differing, 20);
    }
}
