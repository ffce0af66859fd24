//! Dense matrices over a prime field 𝔽_p with exact row reduction.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}/{}{:?}", self.rows, self.cols, self.p, self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Matrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Build from row lists; entries are reduced mod p. `cols` is needed for zero-row matrices.
    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::pre(format!(
                    "matrix row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = v % p;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch in product");
        assert_eq!(self.p, other.p, "matrix field mismatch in product");
        let p = self.p as u64;
        let mut out = Self::zeros(self.rows, other.cols, self.p);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % p) as u32;
                }
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(sel) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != row {
                for c in 0..m.cols {
                    m.data.swap(sel * m.cols + c, row * m.cols + c);
                }
            }
            let inv = inv_mod(m.get(row, col), self.p) as u64;
            for c in 0..m.cols {
                let i = row * m.cols + c;
                m.data[i] = (m.data[i] as u64 * inv % p) as u32;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col) as u64;
                if f == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let sub = f * m.get(row, c) as u64 % p;
                    let i = r * m.cols + c;
                    m.data[i] = ((m.data[i] as u64 + p - sub) % p) as u32;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical null-space basis as the columns of a `cols × k` matrix, one per free column of the RREF.
    pub fn null_space(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len(), self.p);
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, 1);
            for (j, &pc) in pivots.iter().enumerate() {
                let v = r.get(j, f);
                if v != 0 {
                    out.set(pc, k, self.p - v);
                }
            }
        }
        out
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut out = Self::zeros(pivots.len(), self.cols, self.p);
        out.data.copy_from_slice(&r.data[..pivots.len() * self.cols]);
        out
    }

    /// Some X with `self · X = b`, choosing zero for free variables.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "right-hand side shape mismatch");
        let n = self.cols;
        let k = b.cols;
        let mut aug = Self::zeros(self.rows, n + k, self.p);
        for r in 0..self.rows {
            for c in 0..n {
                aug.data[r * (n + k) + c] = self.get(r, c);
            }
            for c in 0..k {
                aug.data[r * (n + k) + n + c] = b.get(r, c);
            }
        }
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&pc| pc >= n) {
            return None;
        }
        let mut x = Self::zeros(n, k, self.p);
        for (j, &pc) in pivots.iter().enumerate() {
            for c in 0..k {
                x.set(pc, c, red.get(j, n + c));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.rows, self.p))?;
        (self.mul(&x) == Matrix::identity(self.rows, self.p)).then_some(x)
    }

    /// Stack `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, p: self.p, data }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.transpose().vstack(&other.transpose()).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]], cols: usize, p: u32) -> Matrix {
        let rs: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(&rs, cols, p).unwrap()
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(101));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(9));
    }

    #[test]
    fn rref_over_f3() {
        let a = m(&[&[2, 1], &[1, 2]], 2, 3);
        // rows are proportional mod 3
        assert_eq!(a.rank(), 1);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r.to_rows(), vec![vec![1, 2], vec![0, 0]]);
    }

    #[test]
    fn null_space_is_annihilated() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]], 3, 2);
        let n = a.null_space();
        assert_eq!(n.cols(), 1);
        assert!(a.mul(&n).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[1, 2], &[3, 4]], 2, 5);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, 5));
        let b = m(&[&[1], &[0]], 1, 5);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let sing = m(&[&[1, 1], &[1, 1]], 2, 2);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&m(&[&[1], &[0]], 1, 2)).is_none());
    }

    #[test]
    fn empty_shapes() {
        let z = Matrix::zeros(0, 3, 2);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.null_space().cols(), 3);
        let e = Matrix::zeros(2, 0, 2);
        assert_eq!(e.solve(&Matrix::zeros(2, 0, 2)).unwrap().rows(), 0);
    }
}
