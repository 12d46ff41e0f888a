//! Dense constant matrices over the prime field; used for leading
//! matrices and the rank/inverse computations they need.

use crate::field::PrimeModulus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    modulus: PrimeModulus,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(modulus: PrimeModulus, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(modulus, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, modulus.reduce(v));
            }
        }
        m
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
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
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.modulus;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let coef = self.get(i, c);
                if coef != 0 {
                    for j in 0..self.cols {
                        let v = f.sub_mul(self.get(i, j), coef, self.get(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<FieldMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(self.modulus, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(self.modulus, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows);
        let f = self.modulus;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Solves `x * self = b` for a row vector `x`, if a solution exists.
    pub fn solve_left(&self, b: &[u64]) -> Option<Vec<u64>> {
        // x A = b  <=>  A^T x^T = b^T; eliminate on [A^T | b^T]
        let f = self.modulus;
        let (n, m) = (self.rows, self.cols);
        let mut aug = Self::zeros(f, m, n + 1);
        for i in 0..n {
            for j in 0..m {
                aug.set(j, i, self.get(i, j));
            }
        }
        for (j, &v) in b.iter().enumerate() {
            aug.set(j, n, v);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![0; n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, n);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn rank_and_inverse() {
        let f = fp(7);
        let a = FieldMatrix::from_rows(f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(a.rank(), 1);
        assert!(a.inverse().is_none());
        let b = FieldMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]);
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv), FieldMatrix::identity(f, 2));
        assert_eq!(inv.mul(&b), FieldMatrix::identity(f, 2));
    }

    #[test]
    fn solve_left_consistent_and_not() {
        let f = fp(5);
        let a = FieldMatrix::from_rows(f, &[vec![1, 0, 1], vec![0, 1, 1]]);
        let x = a.solve_left(&[2, 3, 0]).unwrap();
        assert_eq!(x, vec![2, 3]);
        assert!(a.solve_left(&[1, 1, 1]).is_none());
    }
}
