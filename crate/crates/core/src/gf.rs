//! Dense linear algebra over a prime field `GF(p)`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, r) in entries.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[u64], p: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| (acc + self.get(i, j) * v[j]) % p))
            .collect()
    }

    pub fn mul(&self, other: &Mat, p: u64) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Reduces `rows` in place to reduced row-echelon form; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// A subspace of `GF(p)^n`, stored by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn span(ambient: usize, vectors: &[Vec<u64>], p: u64) -> Self {
        let mut basis = vectors.to_vec();
        let pivots = rref(&mut basis, p);
        Subspace { ambient, basis, pivots }
    }

    pub fn contains(&self, v: &[u64], p: u64) -> bool {
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                for j in 0..self.ambient {
                    w[j] = (w[j] + (p - f) * row[j]) % p;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// All `k`-dimensional subspaces of `GF(p)^n`.
pub fn subspaces(n: usize, k: usize, p: u64) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose(n, k, 0, &mut pivots, &mut |piv| {
        // Free positions: in row r, columns after piv[r] that are not pivots.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as usize).pow(free.len() as u32);
        for mut code in 0..total {
            let mut basis = vec![vec![0u64; n]; k];
            for (r, &c) in piv.iter().enumerate() {
                basis[r][c] = 1;
            }
            for &(r, c) in &free {
                basis[r][c] = (code % p as usize) as u64;
                code /= p as usize;
            }
            out.push(Subspace { ambient: n, basis, pivots: piv.to_vec() });
        }
    });
    out
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for c in start..n {
        if n - c < k - cur.len() {
            break;
        }
        cur.push(c);
        choose(n, k, c + 1, cur, f);
        cur.pop();
    }
}

/// Number of `k`-dimensional subspaces of `GF(q)^n` (Gaussian binomial).
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The first `count` primes that are at least `from`.
pub fn primes_from(from: u64, count: usize) -> Vec<u64> {
    (from.max(2)..).filter(|&n| is_prime(n)).take(count).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for p in [2, 3, 5] {
            for n in 0..=3 {
                for k in 0..=n {
                    assert_eq!(subspaces(n, k, p).len() as u128, gaussian_binomial(n, k, p));
                }
            }
        }
    }

    #[test]
    fn rref_rank_and_membership() {
        let p = 7;
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows, p), 2);
        let s = Subspace::span(3, &rows, p);
        assert!(s.contains(&[1, 3, 4], p));
        assert!(!s.contains(&[0, 0, 1], p));
    }

    #[test]
    fn inverse_mod_prime() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn prime_ladder() {
        assert_eq!(primes_from(2, 5), vec![2, 3, 5, 7, 11]);
        assert_eq!(primes_from(5, 3), vec![5, 7, 11]);
    }
}
