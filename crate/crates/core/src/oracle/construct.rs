use crate::error::OracleError;
use crate::gf::{Mat, Subspace};
use crate::quiver::{DimVector, Quiver, TubeShape};

use super::{hom_dimension, random_on_shape, ModuleFamily, Representation};

/// What to build; see [`construct_module`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleKind {
    Projective(usize),
    Injective(usize),
    /// The unique rigid indecomposable of a real Schur root.
    Exceptional(DimVector),
    /// A regular simple of dimension δ in a homogeneous tube.
    GenericDelta,
    /// The homogeneous module of quasi-length `n` on a generic regular simple.
    Homogeneous(usize),
    /// Regular simple number `index` (0-based) of a non-homogeneous tube.
    TubeSimple(TubeShape, usize),
    /// Quasi-socle `socle` (0-based), quasi-length `length`.
    TubeObject(TubeShape, usize, usize),
    /// Uniserial nilpotent representation of the cyclic quiver `v -> v-1`.
    CyclicTubeModel { rank: usize, index: usize, length: usize },
}

pub(crate) fn mix_seed(seed: u64, p: u64, salt: u64) -> u64 {
    let mut z = seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn paths_from(q: &Quiver, i: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut k = 0;
    while k < out.len() {
        let end = out[k].last().map_or(i, |&a| q.arrows()[a].1);
        for (a, &(s, _)) in q.arrows().iter().enumerate() {
            if s == end {
                let mut p = out[k].clone();
                p.push(a);
                out.push(p);
            }
        }
        k += 1;
    }
    out
}

fn path_end(q: &Quiver, start: usize, path: &[usize]) -> usize {
    path.last().map_or(start, |&a| q.arrows()[a].1)
}

/// Indecomposable projective at `i`, with basis the paths starting at `i`.
pub fn projective(q: &Quiver, i: usize, p: u64) -> Representation {
    let paths = paths_from(q, i);
    let n = q.vertex_count();
    let mut index: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pos = vec![0usize; paths.len()];
    for (k, path) in paths.iter().enumerate() {
        let v = path_end(q, i, path);
        pos[k] = index[v].len();
        index[v].push(k);
    }
    let dims: Vec<usize> = index.iter().map(|l| l.len()).collect();
    let matrices = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for &k in &index[s] {
                let mut ext = paths[k].clone();
                ext.push(a);
                let target = paths.iter().position(|pp| *pp == ext).expect("path closure");
                m.set(pos[target], pos[k], 1);
            }
            m
        })
        .collect();
    Representation { vertices: n, arrows: q.arrows().to_vec(), prime: p, dims, matrices }
}

/// Indecomposable injective at `i`, with basis dual to the paths ending at `i`.
pub fn injective(q: &Quiver, i: usize, p: u64) -> Representation {
    let n = q.vertex_count();
    // Paths ending at i, grouped by their start vertex.
    let mut by_start: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for start in 0..n {
        for path in paths_from(q, start) {
            if path_end(q, start, &path) == i {
                by_start[start].push(path);
            }
        }
    }
    let dims: Vec<usize> = by_start.iter().map(|l| l.len()).collect();
    let matrices = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for (col, path) in by_start[s].iter().enumerate() {
                if path.first() == Some(&a) {
                    let rest = &path[1..];
                    let row = by_start[t].iter().position(|pp| pp.as_slice() == rest).expect("suffix path");
                    m.set(row, col, 1);
                }
            }
            m
        })
        .collect();
    Representation { vertices: n, arrows: q.arrows().to_vec(), prime: p, dims, matrices }
}

/// Rigid indecomposable of dimension `d`: a random sample certified by `End = GF(p)`.
pub fn exceptional(
    q: &Quiver,
    d: &[i64],
    p: u64,
    seed: u64,
    retries: usize,
) -> Result<Representation, OracleError> {
    if d.iter().any(|&x| x < 0) {
        return Err(OracleError::NegativeDim);
    }
    if q.tits_form(d) != 1 {
        return Err(OracleError::NotSchurRoot(d.to_vec()));
    }
    for attempt in 0..retries as u64 {
        let m = random_on_shape(q.vertex_count(), q.arrows(), d, p, mix_seed(seed, p, attempt));
        // End = k with <d,d> = 1 forces Ext^1(M,M) = 0.
        if hom_dimension(&m, &m)? == 1 {
            return Ok(m);
        }
    }
    Err(OracleError::CertificationFailed { what: format!("exceptional {d:?}"), prime: p, tries: retries })
}

/// Regular simple of dimension δ outside every non-homogeneous tube.
pub fn generic_delta(
    q: &Quiver,
    tubes: &[TubeShape],
    p: u64,
    seed: u64,
    retries: usize,
) -> Result<Representation, OracleError> {
    let delta = q.delta()?.clone();
    let mut simples = Vec::new();
    for (t, tube) in tubes.iter().enumerate() {
        for (s, dim) in tube.simples.iter().enumerate() {
            simples.push(exceptional(q, dim, p, mix_seed(seed, t as u64, 1000 + s as u64), retries)?);
        }
    }
    for attempt in 0..retries as u64 {
        let m = random_on_shape(q.vertex_count(), q.arrows(), &delta, p, mix_seed(seed, p, 7000 + attempt));
        if hom_dimension(&m, &m)? != 1 {
            continue;
        }
        let mut clean = true;
        for s in &simples {
            if hom_dimension(s, &m)? != 0 || hom_dimension(&m, s)? != 0 {
                clean = false;
                break;
            }
        }
        if clean {
            return Ok(m);
        }
    }
    Err(OracleError::CertificationFailed { what: "generic delta module".into(), prime: p, tries: retries })
}

/// Nonsplit extension `0 -> sub -> E -> quot -> 0`, taking the first cocycle outside the coboundaries.
pub fn nonsplit_extension(sub: &Representation, quot: &Representation) -> Result<Representation, OracleError> {
    if sub.arrows != quot.arrows || sub.vertices != quot.vertices {
        return Err(OracleError::QuiverMismatch);
    }
    if sub.prime != quot.prime {
        return Err(OracleError::PrimeMismatch);
    }
    let p = sub.prime;
    let (a, c) = (&sub.dims, &quot.dims);
    // Cocycle coordinates: one a[t] x c[s] block per arrow s -> t.
    let mut z_off = vec![0usize];
    for &(s, t) in &sub.arrows {
        z_off.push(z_off.last().unwrap() + a[t] * c[s]);
    }
    let z_len = *z_off.last().unwrap();
    let mut boundaries: Vec<Vec<u64>> = Vec::new();
    for v in 0..sub.vertices {
        for i in 0..a[v] {
            for j in 0..c[v] {
                // h = unit matrix E_ij at vertex v; image A_x h_s - h_t C_x.
                let mut z = vec![0u64; z_len];
                for (x, &(s, t)) in sub.arrows.iter().enumerate() {
                    let blk = c[s];
                    if s == v {
                        for r in 0..a[t] {
                            let idx = z_off[x] + r * blk + j;
                            z[idx] = (z[idx] + sub.matrices[x].get(r, i)) % p;
                        }
                    }
                    if t == v {
                        for col in 0..c[s] {
                            let idx = z_off[x] + i * blk + col;
                            z[idx] = (z[idx] + p - quot.matrices[x].get(j, col)) % p;
                        }
                    }
                }
                boundaries.push(z);
            }
        }
    }
    let span = Subspace::span(z_len, &boundaries, p);
    let pick = (0..z_len).find(|&k| {
        let mut u = vec![0u64; z_len];
        u[k] = 1;
        !span.contains(&u, p)
    });
    let Some(k) = pick else {
        return Err(OracleError::CertificationFailed { what: "nonsplit extension".into(), prime: p, tries: 1 });
    };
    let dims: Vec<usize> = a.iter().zip(c).map(|(x, y)| x + y).collect();
    let matrices = sub
        .arrows
        .iter()
        .enumerate()
        .map(|(x, &(s, t))| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for r in 0..a[t] {
                for col in 0..a[s] {
                    m.set(r, col, sub.matrices[x].get(r, col));
                }
                for col in 0..c[s] {
                    if z_off[x] + r * c[s] + col == k {
                        m.set(r, a[s] + col, 1);
                    }
                }
            }
            for r in 0..c[t] {
                for col in 0..c[s] {
                    m.set(a[t] + r, a[s] + col, quot.matrices[x].get(r, col));
                }
            }
            m
        })
        .collect();
    Ok(Representation { vertices: sub.vertices, arrows: sub.arrows.clone(), prime: p, dims, matrices })
}

/// Dimension of `Ext^1(quot, sub)` over `GF(p)`.
pub fn ext_dimension(quot: &Representation, sub: &Representation) -> Result<usize, OracleError> {
    let hom = hom_dimension(quot, sub)?;
    let mut euler: i64 = quot.dims.iter().zip(&sub.dims).map(|(&x, &y)| (x * y) as i64).sum();
    for &(s, t) in &quot.arrows {
        euler -= (quot.dims[s] * sub.dims[t]) as i64;
    }
    Ok((hom as i64 - euler) as usize)
}

pub fn cyclic_tube_model(rank: usize, index: usize, length: usize, p: u64) -> Representation {
    let arrows: Vec<(usize, usize)> = (0..rank).map(|v| (v, (v + rank - 1) % rank)).collect();
    // Basis b_k sits at vertex index + length - 1 - k; arrows send b_k to b_{k+1}.
    let vertex_of = |k: usize| (index + length - 1 - k) % rank;
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for k in 0..length {
        slots[vertex_of(k)].push(k);
    }
    let dims: Vec<usize> = slots.iter().map(|s| s.len()).collect();
    let pos = |k: usize| slots[vertex_of(k)].iter().position(|&x| x == k).unwrap();
    let matrices = arrows
        .iter()
        .map(|&(s, t)| {
            let mut m = Mat::zeros(dims[t], dims[s]);
            for &k in &slots[s] {
                if k + 1 < length {
                    m.set(pos(k + 1), pos(k), 1);
                }
            }
            m
        })
        .collect();
    Representation { vertices: rank, arrows, prime: p, dims, matrices }
}

/// Builds `E_socle[length]` by successive nonsplit extensions on top of tube simples.
pub fn tube_object(
    q: &Quiver,
    tube: &TubeShape,
    socle: usize,
    length: usize,
    p: u64,
    seed: u64,
    retries: usize,
) -> Result<Representation, OracleError> {
    if length == 0 {
        return Ok(Representation::zero_on(q, p));
    }
    let r = tube.rank;
    let mut simples = Vec::with_capacity(r);
    for s in 0..r {
        simples.push(exceptional(q, &tube.simples[s], p, mix_seed(seed, p, 100 + s as u64), retries)?);
    }
    let mut m = simples[socle % r].clone();
    for l in 1..length {
        m = nonsplit_extension(&m, &simples[(socle + l) % r])?;
    }
    Ok(m)
}

/// The homogeneous module `E[n]` over a certified generic regular simple `E`.
pub fn homogeneous(
    q: &Quiver,
    tubes: &[TubeShape],
    n: usize,
    p: u64,
    seed: u64,
    retries: usize,
) -> Result<Representation, OracleError> {
    if n == 0 {
        return Ok(Representation::zero_on(q, p));
    }
    let e = generic_delta(q, tubes, p, seed, retries)?;
    let mut m = e.clone();
    for _ in 1..n {
        m = nonsplit_extension(&m, &e)?;
    }
    Ok(m)
}

pub fn construct_module(
    q: &Quiver,
    kind: &ModuleKind,
    p: u64,
    seed: u64,
    retries: usize,
) -> Result<Representation, OracleError> {
    match kind {
        ModuleKind::Projective(i) => Ok(projective(q, *i, p)),
        ModuleKind::Injective(i) => Ok(injective(q, *i, p)),
        ModuleKind::Exceptional(d) => exceptional(q, d, p, seed, retries),
        ModuleKind::GenericDelta => generic_delta(q, &q.regular_simple_orbits()?, p, seed, retries),
        ModuleKind::Homogeneous(n) => homogeneous(q, &q.regular_simple_orbits()?, *n, p, seed, retries),
        ModuleKind::TubeSimple(t, s) => exceptional(q, t.simple(*s as i64), p, mix_seed(seed, p, 100 + (*s % t.rank) as u64), retries),
        ModuleKind::TubeObject(t, s, l) => tube_object(q, t, *s, *l, p, seed, retries),
        ModuleKind::CyclicTubeModel { rank, index, length } => Ok(cyclic_tube_model(*rank, *index, *length, p)),
    }
}

/// A [`ModuleKind`] over every admissible prime.
#[derive(Debug, Clone)]
pub struct KindFamily {
    pub quiver: Quiver,
    pub kind: ModuleKind,
    pub seed: u64,
    pub retries: usize,
}

impl KindFamily {
    pub fn new(quiver: &Quiver, kind: ModuleKind, seed: u64) -> Self {
        KindFamily { quiver: quiver.clone(), kind, seed, retries: 128 }
    }
}

impl ModuleFamily for KindFamily {
    fn dims(&self) -> Vec<usize> {
        let q = &self.quiver;
        let d: DimVector = match &self.kind {
            ModuleKind::Projective(i) => q.projective_dim(*i),
            ModuleKind::Injective(i) => q.injective_dim(*i),
            ModuleKind::Exceptional(d) => d.clone(),
            ModuleKind::GenericDelta => q.delta().cloned().unwrap_or_default(),
            ModuleKind::Homogeneous(n) => {
                q.delta().map(|d| d.iter().map(|x| x * *n as i64).collect()).unwrap_or_default()
            }
            ModuleKind::TubeSimple(t, s) => t.simple(*s as i64).clone(),
            ModuleKind::TubeObject(t, s, l) => t.object_dim(*s as i64, *l),
            ModuleKind::CyclicTubeModel { rank, index, length } => {
                cyclic_tube_model(*rank, *index, *length, 2).dim_vector()
            }
        };
        d.into_iter().map(|x| x.max(0) as usize).collect()
    }

    fn at_prime(&self, p: u64) -> Result<Representation, OracleError> {
        construct_module(&self.quiver, &self.kind, p, self.seed, self.retries)
    }

    fn min_prime(&self) -> u64 {
        match self.kind {
            // λ must avoid the special points of the non-homogeneous tubes.
            ModuleKind::GenericDelta | ModuleKind::Homogeneous(_) => 5,
            // Random samples over GF(2) are too often decomposable for a bounded retry budget.
            ModuleKind::Exceptional(_) | ModuleKind::TubeSimple(..) | ModuleKind::TubeObject(..) => 3,
            _ => 2,
        }
    }
}

/// Reduction mod `p` of a representation with integer entries.
#[derive(Debug, Clone)]
pub struct IntegralFamily {
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub matrices: Vec<Vec<Vec<i64>>>,
    pub min_prime: u64,
}

impl ModuleFamily for IntegralFamily {
    fn dims(&self) -> Vec<usize> {
        self.dims.clone()
    }
    fn at_prime(&self, p: u64) -> Result<Representation, OracleError> {
        Ok(Representation::from_integer_matrices(&self.quiver, p, &self.dims, &self.matrices))
    }
    fn min_prime(&self) -> u64 {
        self.min_prime
    }
}
