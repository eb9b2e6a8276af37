//! Dense matrices over the rationals with exact Gauss-Jordan elimination.

use std::fmt;

use num::integer::lcm;
use num::{BigInt, One, ToPrimitive, Zero};
use serde_json::Value;

use crate::rational::{fmt_q, q, Q};

pub type Vector = Vec<Q>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![q(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = q(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = q(0);
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `M^{dim} = 0`, tested by repeated squaring up to the first power of
    /// two at least `dim`. Runs on `cM` with `c` clearing all denominators.
    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.scaled_integers();
        let mut k = 1usize;
        while k < n {
            if m.iter().all(Zero::is_zero) {
                return true;
            }
            m = int_mul(&m, &m, n);
            k *= 2;
        }
        m.iter().all(Zero::is_zero)
    }

    /// Smallest `d` with `M^d = 0`, if any.
    pub fn nilpotency_index(&self) -> Option<u32> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let base = self.scaled_integers();
        let mut m: Vec<BigInt> = (0..n * n).map(|k| if k / n == k % n { BigInt::one() } else { BigInt::zero() }).collect();
        for d in 0..=n as u32 {
            if m.iter().all(Zero::is_zero) {
                return Some(d);
            }
            m = int_mul(&m, &base, n);
        }
        None
    }

    /// Entries times the lcm of all denominators.
    fn scaled_integers(&self) -> Vec<BigInt> {
        let c = self.data.iter().fold(BigInt::one(), |acc, x| lcm(acc, x.denom().clone()));
        self.data.iter().map(|x| x.numer() * (&c / x.denom())).collect()
    }

    /// Rank modulo the prime `2^61 - 1` after clearing denominators row by
    /// row. Never exceeds the rational rank, so a full value certifies it.
    pub fn rank_mod_prime(&self) -> usize {
        const P: u128 = (1 << 61) - 1;
        let p_big = BigInt::from(P);
        let mut rows: Vec<Vec<u128>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let c = row.iter().fold(BigInt::one(), |acc, x| lcm(acc, x.denom().clone()));
                row.iter()
                    .map(|x| {
                        let v = ((x.numer() * (&c / x.denom())) % &p_big + &p_big) % &p_big;
                        v.to_u128().expect("reduced residue")
                    })
                    .collect()
            })
            .collect();
        let pow = |mut b: u128, mut e: u128| {
            let mut r = 1u128;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % P;
                }
                b = b * b % P;
                e >>= 1;
            }
            r
        };
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = pow(rows[rank][col], P - 2);
            for i in rank + 1..rows.len() {
                let f = rows[i][col] * inv % P;
                if f == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let sub = f * rows[rank][j] % P;
                    rows[i][j] = (rows[i][j] + P - sub) % P;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = q(1) / &m[(row, col)];
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let f = m[(i, col)].clone();
                for j in col..m.cols {
                    if !m[(row, j)].is_zero() {
                        let v = &m[(row, j)] * &f;
                        m.data[i * m.cols + j] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact rank; full rank is certified modulo a prime before falling
    /// back to rational elimination.
    pub fn rank(&self) -> usize {
        let r = self.rank_mod_prime();
        if r == self.rows.min(self.cols) {
            return r;
        }
        self.rref().1.len()
    }

    /// Basis of the null space `{x : Mx = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![q(0); self.cols];
                v[f] = q(1);
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(k, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = q(1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Coordinates of `v` in the column basis, when `v` lies in the column span
    /// and the columns are independent.
    pub fn solve(&self, v: &[Q]) -> Option<Vector> {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = v[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![q(0); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r[(k, self.cols)].clone();
        }
        Some(x)
    }

    /// `[[ "p/q", ... ], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array((0..self.rows).map(|i| Value::Array(self.row(i).iter().map(|x| Value::String(fmt_q(x))).collect())).collect())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] += x * y;
                }
            }
        }
    }
    out
}

/// Rank of a list of vectors of length `dim`.
pub fn span_rank(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(vectors, dim).rank()
}

/// An independent subset spanning the same space, in the given order.
pub fn independent_subset(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (_, pivots) = Matrix::from_columns(vectors, dim).rref();
    pivots.into_iter().map(|p| vectors[p].clone()).collect()
}

/// Extends an independent list by vectors from `candidates`, keeping only
/// those that increase the rank.
pub fn extend_basis(base: &[Vector], candidates: &[Vector], dim: usize) -> Vec<Vector> {
    let mut all: Vec<Vector> = base.to_vec();
    all.extend_from_slice(candidates);
    let (_, pivots) = Matrix::from_columns(&all, dim).rref();
    pivots.into_iter().filter(|&p| p >= base.len()).map(|p| all[p].clone()).collect()
}

pub fn scale_vec(v: &[Q], c: &Q) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vec(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_rank_kernel() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn nilpotency() {
        let j = Matrix::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(j.is_nilpotent());
        assert_eq!(j.nilpotency_index(), Some(3));
        assert!(!Matrix::identity(2).is_nilpotent());
        assert_eq!(j.pow(2), j.mul(&j));
        let half = j.scale(&crate::rational::qf(1, 3));
        assert_eq!(half.nilpotency_index(), Some(3));
    }

    #[test]
    fn modular_rank_bounds_rational_rank() {
        let m = Matrix::from_rows(vec![
            vec![crate::rational::qf(1, 2), q(1), q(0)],
            vec![q(1), q(2), q(0)],
            vec![q(0), q(0), crate::rational::qf(2, 7)],
        ]);
        assert_eq!(m.rank_mod_prime(), 2);
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::identity(4).rank(), 4);
    }

    #[test]
    fn solve_and_extend() {
        let m = Matrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(m.solve(&[q(2), q(3), q(0)]), Some(vec![q(2), q(3)]));
        assert_eq!(m.solve(&[q(0), q(0), q(1)]), None);
        let base = vec![vec![q(1), q(0), q(0)]];
        let ext = extend_basis(&base, &[vec![q(2), q(0), q(0)], vec![q(0), q(1), q(0)]], 3);
        assert_eq!(ext, vec![vec![q(0), q(1), q(0)]]);
    }
}
