//! Dense linear algebra over the prime field F_p.
//!
//! Dimensions here are small (graded pieces stay under ~100), so plain
//! Gaussian elimination is all we need.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A dense matrix over F_p, row-major, entries reduced into `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMat {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = FpMat::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u64);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == FpMat::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> FpMat {
        let mut t = FpMat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.data[i * out.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v = (*v + *w) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v = (*v + self.p - *w) % self.p;
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut result = FpMat::identity(self.p, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// Stack two matrices with the same column count vertically.
    pub fn vstack(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.cols);
        let mut out = FpMat::zeros(self.p, self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    /// Kronecker product (acts on the tensor product basis, left factor major).
    pub fn kron(&self, other: &FpMat) -> FpMat {
        let mut out = FpMat::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a * other.get(k, l),
                        );
                    }
                }
            }
        }
        out
    }

    fn scalar_inv(&self, a: u64) -> u64 {
        // p is prime, so Fermat works.
        let mut r = 1u64;
        let mut b = a % self.p;
        let mut k = self.p - 2;
        while k > 0 {
            if k & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            k >>= 1;
        }
        r
    }

    /// Row echelon form; returns (reduced matrix, rank, pivot columns).
    fn echelon(&self) -> (FpMat, usize, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let t = m.get(r, j);
                m.set(r, j, m.get(pr, j));
                m.set(pr, j, t);
            }
            let inv = m.scalar_inv(m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, m.get(r, j) * inv % p);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (p - f) * m.get(r, j)) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel, one column vector per row of the result.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (e, rank, pivots) = self.echelon();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for r in 0..rank {
                // pivot column pivots[r]: value = -e[r][fc]
                v[pivots[r]] = (p - e.get(r, fc)) % p;
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<FpMat> {
        assert_eq!(self.rows, self.cols);
        let p = self.p;
        let n = self.rows;
        let mut m = FpMat::zeros(p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(i, j));
            }
            m.set(i, n + i, 1);
        }
        // Gauss-Jordan, pivoting only in the left block.
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Err(Error::InvalidActor(
                    "matrix is not invertible over F_p".into(),
                ));
            };
            if pr != c {
                for j in 0..2 * n {
                    let t = m.get(c, j);
                    m.set(c, j, m.get(pr, j));
                    m.set(pr, j, t);
                }
            }
            let inv = m.scalar_inv(m.get(c, c));
            for j in 0..2 * n {
                m.set(c, j, m.get(c, j) * inv % p);
            }
            for i in 0..n {
                if i != c && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..2 * n {
                        let v = (m.get(i, j) + (p - f) * m.get(c, j)) % p;
                        m.set(i, j, v);
                    }
                }
            }
        }
        let mut inv = FpMat::zeros(p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let p = self.p;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..m.cols {
                    let t = m.get(c, j);
                    m.set(c, j, m.get(pr, j));
                    m.set(pr, j, t);
                }
                det = (p - det) % p;
            }
            det = det * m.get(c, c) % p;
            let inv = m.scalar_inv(m.get(c, c));
            for i in c + 1..m.rows {
                if m.get(i, c) != 0 {
                    let f = m.get(i, c) * inv % p;
                    for j in c..m.cols {
                        let v = (m.get(i, j) + (p - f) * m.get(c, j)) % p;
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    /// Determinant of the square submatrix given by row and column index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> u64 {
        assert_eq!(rows.len(), cols.len());
        let mut s = FpMat::zeros(self.p, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                s.set(i, j, self.get(r, c));
            }
        }
        s.det()
    }

    /// Dimension of the joint kernel of a family of matrices of equal width.
    pub fn joint_kernel_dim(mats: &[FpMat]) -> usize {
        match mats.split_first() {
            None => 0,
            Some((first, rest)) => {
                let mut stacked = first.clone();
                for m in rest {
                    stacked = stacked.vstack(m);
                }
                stacked.kernel_dim()
            }
        }
    }
}

impl fmt::Debug for FpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMat mod {} ({}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = FpMat::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 0]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_dim(), 1);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        // kernel vector is (0,0,*)
        assert_eq!(basis[0][0], 0);
        assert_eq!(basis[0][1], 0);
        assert_ne!(basis[0][2], 0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMat::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = FpMat::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn det_matches_cofactor_on_2x2() {
        for p in [3u64, 5, 7] {
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            let m = FpMat::from_rows(
                                p,
                                &[vec![a as i64, b as i64], vec![c as i64, d as i64]],
                            );
                            assert_eq!(m.det(), (a * d % p + p - b * c % p) % p);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kron_shape_and_values() {
        let a = FpMat::from_rows(3, &[vec![1, 2], vec![0, 1]]);
        let b = FpMat::from_rows(3, &[vec![2, 0], vec![1, 1]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(0, 0), 2); // a00*b00
        assert_eq!(k.get(0, 2), 1); // a01*b00 = 2*2 = 4 = 1 mod 3
    }

    #[test]
    fn joint_kernel() {
        let a = FpMat::from_rows(3, &[vec![1, 0, 0]]);
        let b = FpMat::from_rows(3, &[vec![0, 1, 0]]);
        assert_eq!(FpMat::joint_kernel_dim(&[a, b]), 1);
    }
}
