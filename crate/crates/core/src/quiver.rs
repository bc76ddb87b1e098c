//! Acyclic quivers, their Euler form and affine root data.
//!
//! Vertices are 0-based here; the JSON and CLI layers use 1-based indices.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::QuiverError;

/// Integer dimension vector; negative entries count shifted projectives.
pub type DimVector = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AffineClass {
    ATilde { p: usize, q: usize },
    DTilde { n: usize },
    ETilde { n: usize },
    Finite,
    Other,
}

impl AffineClass {
    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            AffineClass::ATilde { .. } | AffineClass::DTilde { .. } | AffineClass::ETilde { .. }
        )
    }
}

impl fmt::Display for AffineClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineClass::ATilde { p, q } => write!(f, "A~({p},{q})"),
            AffineClass::DTilde { n } => write!(f, "D~{n}"),
            AffineClass::ETilde { n } => write!(f, "E~{n}"),
            AffineClass::Finite => write!(f, "finite"),
            AffineClass::Other => write!(f, "other"),
        }
    }
}

/// External quiver description: `{"vertices": n, "arrows": [[s,t], ...]}`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerData {
    /// `r_matrix[i][j]` counts arrows i -> j.
    pub r_matrix: Vec<Vec<i64>>,
    /// `Id - R`; the Euler form is `d * euler_matrix * e^T`.
    pub euler_matrix: Vec<Vec<i64>>,
    pub coxeter_matrix: Vec<Vec<i64>>,
    pub coxeter_inverse: Vec<Vec<i64>>,
    /// Empty unless the quiver is affine.
    pub delta: DimVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeShape {
    pub rank: usize,
    /// `coxeter(simples[i]) == simples[i - 1]`.
    pub simples: Vec<DimVector>,
    pub label: String,
}

impl TubeShape {
    /// Index of the simple taken cyclically, 0-based.
    pub fn simple(&self, s: i64) -> &DimVector {
        &self.simples[s.rem_euclid(self.rank as i64) as usize]
    }

    /// Dimension vector of the uniserial object with quasi-socle `s` and quasi-length `len`.
    pub fn object_dim(&self, s: i64, len: usize) -> DimVector {
        let n = self.simples[0].len();
        let mut d = vec![0; n];
        for t in 0..len as i64 {
            for (a, b) in d.iter_mut().zip(self.simple(s + t)) {
                *a += b;
            }
        }
        d
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    class: AffineClass,
    /// Sinks first: every arrow goes from a later to an earlier vertex.
    sink_order: Vec<usize>,
    euler: EulerData,
}

impl Quiver {
    /// Builds a quiver from 0-based arrows.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::Empty);
        }
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(QuiverError::BadIndex { vertex: s.max(t) + 1, vertices: n });
            }
            if s == t {
                return Err(QuiverError::CyclicQuiver);
            }
        }
        let sink_order = sink_first_order(n, &arrows).ok_or(QuiverError::CyclicQuiver)?;
        if !connected(n, &arrows) {
            return Err(QuiverError::Disconnected);
        }
        let class = classify(n, &arrows);
        let mut r = vec![vec![0i64; n]; n];
        for &(s, t) in &arrows {
            r[s][t] += 1;
        }
        let mut euler_matrix = identity(n);
        for i in 0..n {
            for j in 0..n {
                euler_matrix[i][j] -= r[i][j];
            }
        }
        let mut q = Quiver {
            n,
            arrows,
            class,
            sink_order,
            euler: EulerData {
                r_matrix: r,
                euler_matrix,
                coxeter_matrix: Vec::new(),
                coxeter_inverse: Vec::new(),
                delta: Vec::new(),
            },
        };
        q.euler.coxeter_matrix = q.matrix_of(|d| q.coxeter_once(d, false));
        q.euler.coxeter_inverse = q.matrix_of(|d| q.coxeter_once(d, true));
        if class.is_affine() {
            q.euler.delta = radical_vector(&q).ok_or(QuiverError::NotAffine)?;
        }
        Ok(q)
    }

    /// Validates a 1-based external description.
    pub fn from_spec(spec: &QuiverSpec) -> Result<Self, QuiverError> {
        let mut arrows = Vec::with_capacity(spec.arrows.len());
        for &[s, t] in &spec.arrows {
            if s == 0 || t == 0 || s > spec.vertices || t > spec.vertices {
                return Err(QuiverError::BadIndex { vertex: s.max(t), vertices: spec.vertices });
            }
            arrows.push((s - 1, t - 1));
        }
        Self::new(spec.vertices, arrows)
    }

    pub fn from_json(text: &str) -> Result<Self, QuiverError> {
        let spec: QuiverSpec =
            serde_json::from_str(text).map_err(|e| QuiverError::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn affine_class(&self) -> AffineClass {
        self.class
    }

    pub fn euler_data(&self) -> &EulerData {
        &self.euler
    }

    pub fn r_matrix(&self) -> &[Vec<i64>] {
        &self.euler.r_matrix
    }

    /// Vertices with sinks first; reversed, it is a topological order.
    pub fn sink_order(&self) -> &[usize] {
        &self.sink_order
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.n).all(|v| self.is_sink(v) || self.is_source(v))
    }

    pub fn unit(&self, i: usize) -> DimVector {
        let mut d = vec![0; self.n];
        d[i] = 1;
        d
    }

    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64, QuiverError> {
        if d.len() != self.n || e.len() != self.n {
            return Err(QuiverError::LengthMismatch { expected: self.n, got: d.len().max(e.len()) });
        }
        Ok(self.euler(d, e))
    }

    /// Unchecked Euler form.
    pub fn euler(&self, d: &[i64], e: &[i64]) -> i64 {
        let mut s: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        for &(i, j) in &self.arrows {
            s -= d[i] * e[j];
        }
        s
    }

    /// Tits form `<d,d>`; real roots have value 1.
    pub fn tits_form(&self, d: &[i64]) -> i64 {
        self.euler(d, d)
    }

    pub fn delta(&self) -> Result<&DimVector, QuiverError> {
        if self.euler.delta.is_empty() {
            Err(QuiverError::NotAffine)
        } else {
            Ok(&self.euler.delta)
        }
    }

    pub fn defect(&self, d: &[i64]) -> Result<i64, QuiverError> {
        Ok(self.euler(self.delta()?, d))
    }

    /// `s_v(d)_v = -d_v + sum over edges v-w of d_w`.
    pub fn simple_reflection(&self, v: usize, d: &[i64]) -> DimVector {
        let mut out = d.to_vec();
        let mut s = -d[v];
        for &(a, b) in &self.arrows {
            if a == v {
                s += d[b];
            } else if b == v {
                s += d[a];
            }
        }
        out[v] = s;
        out
    }

    fn coxeter_once(&self, d: &[i64], inverse: bool) -> DimVector {
        let mut x = d.to_vec();
        if inverse {
            for &v in self.sink_order.iter().rev() {
                x = self.simple_reflection(v, &x);
            }
        } else {
            for &v in &self.sink_order {
                x = self.simple_reflection(v, &x);
            }
        }
        x
    }

    fn matrix_of(&self, f: impl Fn(&[i64]) -> DimVector) -> Vec<Vec<i64>> {
        // Row i is the image of the i-th unit vector.
        (0..self.n).map(|i| f(&self.unit(i))).collect()
    }

    /// `Φ^power(d)`; `Φ` agrees with τ on dimension vectors of non-projective indecomposables.
    pub fn coxeter(&self, d: &[i64], power: i64) -> DimVector {
        let m = if power >= 0 { &self.euler.coxeter_matrix } else { &self.euler.coxeter_inverse };
        let mut x = d.to_vec();
        for _ in 0..power.unsigned_abs() {
            let mut y = vec![0; self.n];
            for (i, xi) in x.iter().enumerate() {
                if *xi != 0 {
                    for j in 0..self.n {
                        y[j] += xi * m[i][j];
                    }
                }
            }
            x = y;
        }
        x
    }

    /// Number of paths from `i` to each vertex.
    pub fn projective_dim(&self, i: usize) -> DimVector {
        let mut d = vec![0; self.n];
        d[i] = 1;
        // Topological order: reversed sink order.
        for &v in self.sink_order.iter().rev() {
            if d[v] == 0 {
                continue;
            }
            for &(s, t) in &self.arrows {
                if s == v {
                    d[t] += d[v];
                }
            }
        }
        d
    }

    /// Number of paths from each vertex to `i`.
    pub fn injective_dim(&self, i: usize) -> DimVector {
        let mut d = vec![0; self.n];
        d[i] = 1;
        for &v in &self.sink_order {
            if d[v] == 0 {
                continue;
            }
            for &(s, t) in &self.arrows {
                if t == v {
                    d[s] += d[v];
                }
            }
        }
        d
    }

    /// Reverses every arrow at a sink or source `v`.
    pub fn reflect(&self, v: usize) -> Result<(Quiver, Reflection), QuiverError> {
        if v >= self.n {
            return Err(QuiverError::BadIndex { vertex: v + 1, vertices: self.n });
        }
        if !self.is_sink(v) && !self.is_source(v) {
            return Err(QuiverError::NotSinkOrSource(v + 1));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
            .collect();
        let q = Quiver::new(self.n, arrows)?;
        Ok((q, Reflection { vertex: v, quiver: self.clone() }))
    }

    /// Positive real roots `d <= delta`, by reflection closure from the simple roots.
    pub fn real_roots_below_delta(&self) -> Result<Vec<DimVector>, QuiverError> {
        let delta = self.delta()?.clone();
        let mut seen: BTreeSet<DimVector> = BTreeSet::new();
        let mut queue: VecDeque<DimVector> = VecDeque::new();
        for i in 0..self.n {
            let e = self.unit(i);
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for v in 0..self.n {
                let s = self.simple_reflection(v, &r);
                if s[v] > r[v] && s.iter().zip(&delta).all(|(a, b)| a <= b) && seen.insert(s.clone())
                {
                    queue.push_back(s);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Non-homogeneous tubes, each as the cyclic list of its regular simples.
    pub fn regular_simple_orbits(&self) -> Result<Vec<TubeShape>, QuiverError> {
        let delta = self.delta()?.clone();
        let candidates: BTreeSet<DimVector> = self
            .real_roots_below_delta()?
            .into_iter()
            .filter(|d| self.euler(&delta, d) == 0 && *d != delta)
            .collect();
        let mut used: BTreeSet<DimVector> = BTreeSet::new();
        let mut tubes: Vec<Vec<DimVector>> = Vec::new();
        for d in candidates.iter().rev() {
            if used.contains(d) {
                continue;
            }
            let mut orbit = vec![d.clone()];
            loop {
                let next = self.coxeter(orbit.last().unwrap(), -1);
                if next == *d {
                    break;
                }
                orbit.push(next);
            }
            for o in &orbit {
                used.insert(o.clone());
            }
            let mut sum = vec![0; self.n];
            for o in &orbit {
                for (a, b) in sum.iter_mut().zip(o) {
                    *a += b;
                }
            }
            if sum == delta && orbit.len() > 1 {
                tubes.push(orbit);
            }
        }
        // Iteration from the lexicographic top makes each orbit start at its largest member.
        Ok(tubes
            .into_iter()
            .enumerate()
            .map(|(k, simples)| TubeShape {
                rank: simples.len(),
                simples,
                label: format!("T{}", k + 1),
            })
            .collect())
    }
}

/// The simple reflection at a sink or source, as a map on dimension vectors.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub vertex: usize,
    quiver: Quiver,
}

impl Reflection {
    pub fn apply(&self, d: &[i64]) -> DimVector {
        self.quiver.simple_reflection(self.vertex, d)
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn sink_first_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut out_deg = vec![0usize; n];
    for &(s, _) in arrows {
        out_deg[s] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| out_deg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for &(s, t) in arrows {
            if t == v {
                out_deg[s] -= 1;
                if out_deg[s] == 0 {
                    ready.insert(s);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn connected(n: usize, arrows: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(s, t) in arrows {
            let w = if s == v {
                t
            } else if t == v {
                s
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

fn classify(n: usize, arrows: &[(usize, usize)]) -> AffineClass {
    let mut mult = vec![vec![0usize; n]; n];
    for &(s, t) in arrows {
        mult[s][t] += 1;
        mult[t][s] += 1;
    }
    let max_mult = mult.iter().flatten().copied().max().unwrap_or(0);
    if max_mult >= 2 {
        return if n == 2 && max_mult == 2 {
            AffineClass::ATilde { p: 1, q: 1 }
        } else {
            AffineClass::Other
        };
    }
    let deg: Vec<usize> = (0..n).map(|v| mult[v].iter().sum()).collect();
    if arrows.len() == n {
        if deg.iter().all(|&d| d == 2) {
            // Walk the cycle and count arrows in each direction.
            let (mut forward, mut prev, mut cur) = (0, usize::MAX, 0);
            for _ in 0..n {
                let next = (0..n).find(|&w| mult[cur][w] == 1 && w != prev).unwrap_or(prev);
                let next = if n == 2 { 1 - cur } else { next };
                if arrows.contains(&(cur, next)) {
                    forward += 1;
                }
                prev = cur;
                cur = next;
            }
            let (p, q) = (forward.max(n - forward), forward.min(n - forward));
            return AffineClass::ATilde { p, q };
        }
        return AffineClass::Other;
    }
    if arrows.len() != n - 1 {
        return AffineClass::Other;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    let adj = &mult;
    let neighbours = |v: usize| (0..n).filter(move |&w| adj[v][w] == 1);
    let deg = &deg;
    let arm_len = |from: usize, first: usize| {
        let (mut prev, mut cur, mut len) = (from, first, 1);
        while deg[cur] == 2 {
            let next = neighbours(cur).find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
            len += 1;
        }
        (len, deg[cur] == 1)
    };
    match branch.as_slice() {
        [] => AffineClass::Finite,
        [c] if deg[*c] == 4 => {
            if n == 5 {
                AffineClass::DTilde { n: 4 }
            } else {
                AffineClass::Other
            }
        }
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = neighbours(*c).map(|w| arm_len(*c, w).0).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => AffineClass::Finite,
                [2, 2, 2] => AffineClass::ETilde { n: 6 },
                [1, 3, 3] => AffineClass::ETilde { n: 7 },
                [1, 2, 5] => AffineClass::ETilde { n: 8 },
                _ => AffineClass::Other,
            }
        }
        [a, b] if deg[*a] == 3 && deg[*b] == 3 => {
            let leaves = |c: usize| neighbours(c).filter(|&w| deg[w] == 1).count();
            if leaves(*a) == 2 && leaves(*b) == 2 {
                AffineClass::DTilde { n: n - 1 }
            } else {
                AffineClass::Other
            }
        }
        _ => AffineClass::Other,
    }
}

/// Primitive positive vector spanning the radical of the symmetrized Euler form.
fn radical_vector(q: &Quiver) -> Option<DimVector> {
    let n = q.n;
    let e = &q.euler.euler_matrix;
    let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| (0..n).map(|j| Ratio::from_integer(e[i][j] + e[j][i])).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| m[r][col] != Ratio::from_integer(0)) else {
            continue;
        };
        m.swap(row, p);
        let inv = Ratio::from_integer(1) / m[row][col];
        for c in 0..n {
            m[row][c] *= inv;
        }
        for r in 0..n {
            if r != row && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col];
                for c in 0..n {
                    let v = m[row][c] * f;
                    m[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let f = free[0];
    let mut v = vec![Ratio::from_integer(0); n];
    v[f] = Ratio::from_integer(1);
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][f];
    }
    let denom_lcm = v.iter().fold(1i64, |acc, x| lcm(acc, *x.denom()));
    let mut ints: Vec<i64> = v.iter().map(|x| (x * denom_lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| gcd(acc, x.abs()));
    for x in ints.iter_mut() {
        *x /= g;
    }
    if ints.iter().all(|&x| x <= 0) {
        for x in ints.iter_mut() {
            *x = -*x;
        }
    }
    ints.iter().all(|&x| x > 0).then_some(ints)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Named quivers. Orientations are alternating wherever the graph allows it.
pub fn builtin(name: &str) -> Option<Quiver> {
    let arrows: Vec<(usize, usize)> = match name {
        "kronecker" => vec![(1, 2), (1, 2)],
        "A21tilde" => vec![(1, 2), (2, 3), (1, 3)],
        "A22tilde" => vec![(1, 2), (3, 2), (3, 4), (1, 4)],
        "A32tilde" => return Some(a_tilde(3, 2)),
        "D4tilde" => vec![(2, 1), (3, 1), (4, 1), (5, 1)],
        "D4tilde_src" => vec![(1, 2), (1, 3), (1, 4), (1, 5)],
        "D5tilde" => return Some(d_tilde(5)),
        "D6tilde" => return Some(d_tilde(6)),
        "E6tilde" => vec![(2, 1), (4, 1), (6, 1), (2, 3), (4, 5), (6, 7)],
        _ => return None,
    };
    let n = arrows.iter().map(|&(s, t)| s.max(t)).max().unwrap_or(0);
    Quiver::new(n, arrows.into_iter().map(|(s, t)| (s - 1, t - 1)).collect()).ok()
}

pub const BUILTIN_NAMES: &[&str] = &[
    "kronecker",
    "A21tilde",
    "A22tilde",
    "A32tilde",
    "D4tilde",
    "D4tilde_src",
    "D5tilde",
    "D6tilde",
    "E6tilde",
];

/// `1 -> 2 -> ... -> p+1` and `1 -> p+q -> ... -> p+2 -> p+1`.
pub fn a_tilde(p: usize, q: usize) -> Quiver {
    assert!(p >= 1 && q >= 1 && p + q >= 2);
    let mut arrows = Vec::new();
    for v in 0..p {
        arrows.push((v, v + 1));
    }
    // Lower path: 0 -> p+q-1 -> ... -> p+1 -> p.
    let mut prev = 0;
    for v in (p + 1..p + q).rev() {
        arrows.push((prev, v));
        prev = v;
    }
    arrows.push((prev, p));
    Quiver::new(p + q, arrows).expect("cycle quiver is valid")
}

/// Alternating D~n on n+1 vertices: leaves 1,2 on vertex 3, chain 3..n-1, leaves n,n+1 on n-1.
pub fn d_tilde(n: usize) -> Quiver {
    assert!(n >= 4);
    if n == 4 {
        return builtin("D4tilde").unwrap();
    }
    let chain: Vec<usize> = (2..n - 1).collect();
    let mut arrows = Vec::new();
    let sink = |k: usize| k % 2 == 0;
    let mut edge = |a: usize, b: usize, a_is_sink: bool| {
        arrows.push(if a_is_sink { (b, a) } else { (a, b) });
    };
    edge(chain[0], 0, sink(0));
    edge(chain[0], 1, sink(0));
    for k in 0..chain.len() - 1 {
        edge(chain[k], chain[k + 1], sink(k));
    }
    let last = chain.len() - 1;
    edge(chain[last], n - 1, sink(last));
    edge(chain[last], n, sink(last));
    Quiver::new(n + 1, arrows).expect("tree quiver is valid")
}
