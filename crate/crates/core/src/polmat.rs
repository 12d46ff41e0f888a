//! Polynomial matrices and the shifted-degree machinery on top of them:
//! shifted row degrees, leading matrices, pivots, reducedness and Popov
//! predicates, and the generic determinant bound.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::matrix::FieldMatrix;
use crate::poly::Poly;

/// Integer column weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Shift(pub Vec<i64>);

impl Shift {
    pub fn uniform(n: usize) -> Self {
        Shift(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn min(&self) -> i64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Amplitude `max - min`.
    pub fn amplitude(&self) -> i64 {
        self.max() - self.min()
    }

    /// Adds `c` to every entry.
    pub fn translate(&self, c: i64) -> Shift {
        Shift(self.0.iter().map(|&v| v + c).collect())
    }

    /// Translate so that the minimum is zero.
    pub fn normalized(&self) -> Shift {
        self.translate(-self.min())
    }

    /// Hermite shift `(0, d, 2d, ..., (n-1)d)`.
    pub fn hermite(n: usize, d: i64) -> Shift {
        Shift((0..n as i64).map(|i| i * d).collect())
    }

    /// Stable permutation sorting the entries non-decreasingly.
    pub fn sorting_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.sort_by_key(|&i| self.0[i]);
        perm
    }

    pub fn select(&self, indices: &[usize]) -> Shift {
        Shift(indices.iter().map(|&i| self.0[i]).collect())
    }

    pub fn concat(&self, other: &Shift) -> Shift {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Shift(v)
    }
}

impl From<Vec<i64>> for Shift {
    fn from(v: Vec<i64>) -> Self {
        Shift(v)
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Pivot index and pivot degree of every row.
///
/// Indices are 0-based here; text output converts to 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotProfile {
    pub indices: Vec<usize>,
    pub degrees: Vec<usize>,
}

impl fmt::Display for PivotProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        let deg: Vec<String> = self.degrees.iter().map(usize::to_string).collect();
        write!(
            f,
            "pivots: ({}) degrees: ({})",
            idx.join(","),
            deg.join(",")
        )
    }
}

/// An `m x n` matrix of polynomials over one prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolMat {
    modulus: PrimeModulus,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolMat {
    pub fn zeros(modulus: PrimeModulus, rows: usize, cols: usize) -> Self {
        PolMat {
            modulus,
            rows,
            cols,
            entries: vec![Poly::zero(modulus); rows * cols],
        }
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(modulus));
        }
        m
    }

    /// Builds a matrix from rows of polynomials; all must share `modulus`.
    pub fn from_rows(modulus: PrimeModulus, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(m * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::dim("rows of unequal length"));
            }
            for e in r {
                if e.modulus() != modulus {
                    return Err(Error::ModulusMismatch {
                        left: modulus.value(),
                        right: e.modulus().value(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(PolMat {
            modulus,
            rows: m,
            cols: n,
            entries,
        })
    }

    /// Convenience constructor from signed coefficient lists (low degree first).
    pub fn from_coeff_rows(modulus: PrimeModulus, rows: &[Vec<Vec<i64>>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| Poly::from_i64s(modulus, c)).collect())
            .collect();
        Self::from_rows(modulus, rows).expect("well-formed coefficient rows")
    }

    pub fn from_fn(
        modulus: PrimeModulus,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Poly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolMat {
            modulus,
            rows,
            cols,
            entries,
        }
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(modulus: PrimeModulus, diag: &[Poly]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(modulus, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_field_matrix(a: &FieldMatrix) -> Self {
        let f = a.modulus();
        Self::from_fn(f, a.rows(), a.cols(), |i, j| Poly::constant(f, a.get(i, j)))
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        debug_assert_eq!(v.modulus(), self.modulus);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Poly] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] -= c * X^k * row[source]`.
    pub fn row_sub_scaled(&mut self, target: usize, source: usize, c: u64, k: usize) {
        debug_assert_ne!(target, source);
        for j in 0..self.cols {
            let s = self.get(source, j).clone();
            self.get_mut(target, j).sub_scaled_shifted(&s, c, k);
        }
    }

    /// `row[target] -= q * row[source]`.
    pub fn row_sub_poly(&mut self, target: usize, source: usize, q: &Poly) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = self.get(source, j) * q;
            let e = self.get_mut(target, j);
            *e = &*e - &t;
        }
    }

    /// `col[target] -= q * col[source]`.
    pub fn col_sub_poly(&mut self, target: usize, source: usize, q: &Poly) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = self.get(i, source) * q;
            let e = self.get_mut(i, target);
            *e = &*e - &t;
        }
    }

    pub fn scale_row(&mut self, i: usize, c: u64) {
        for e in self.row_mut(i) {
            *e = e.scale(c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Column degrees with the zero-column convention of 0.
    pub fn column_degrees(&self) -> Vec<usize> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.get(i, j).deg_bar())
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Poly::deg_bar).max().unwrap_or(0))
            .collect()
    }

    /// Degrees of the diagonal entries (`deg_bar` convention).
    pub fn diagonal_degrees(&self) -> Vec<usize> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).deg_bar())
            .collect()
    }

    pub fn transpose(&self) -> PolMat {
        PolMat::from_fn(self.modulus, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// Submatrix with the given row and column indices, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolMat {
        PolMat::from_fn(self.modulus, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Leading principal `k x k` submatrix.
    pub fn principal(&self, k: usize) -> PolMat {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolMat {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn select_cols(&self, cols: &[usize]) -> PolMat {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    /// `[self; other]`.
    pub fn stack(&self, other: &PolMat) -> Result<PolMat> {
        if self.cols != other.cols {
            return Err(Error::dim("stacking matrices with different column counts"));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(PolMat {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn try_mul(&self, other: &PolMat) -> Result<PolMat> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: other.modulus.value(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolMat::zeros(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out.get_mut(i, j).add_assign_poly(&t);
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on dimension or modulus mismatch.
    pub fn mul(&self, other: &PolMat) -> PolMat {
        self.try_mul(other).expect("polynomial matrix product")
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul_constant(&self, c: &FieldMatrix) -> PolMat {
        assert_eq!(c.cols(), self.rows);
        let f = self.modulus;
        let mut out = PolMat::zeros(f, c.rows(), self.cols);
        for i in 0..c.rows() {
            for k in 0..self.rows {
                let a = c.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let neg = f.neg(a);
                    let src = self.get(k, j).clone();
                    out.get_mut(i, j).sub_scaled_shifted(&src, neg, 0);
                }
            }
        }
        out
    }

    /// Column-wise remainder: column `j` reduced modulo `moduli[j]`.
    pub fn col_mod(&self, moduli: &[Poly]) -> Result<PolMat> {
        if moduli.len() != self.cols {
            return Err(Error::dim(format!(
                "{} moduli for {} columns",
                moduli.len(),
                self.cols
            )));
        }
        if moduli.iter().any(Poly::is_zero) {
            return Err(Error::DivisionByZero);
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, m) in moduli.iter().enumerate() {
                let e = out.get(i, j);
                if e.degree() >= m.degree() {
                    let r = e.try_div_rem(m)?.1;
                    out.set(i, j, r);
                }
            }
        }
        Ok(out)
    }

    fn check_shift(&self, s: &Shift) -> Result<()> {
        if s.len() != self.cols {
            return Err(Error::InvalidShift(format!(
                "shift has length {} but the matrix has {} columns",
                s.len(),
                self.cols
            )));
        }
        Ok(())
    }

    /// Shifted degree of each row; `None` for zero rows.
    pub fn shifted_row_degree(&self, s: &Shift) -> Result<Vec<Option<i64>>> {
        self.check_shift(s)?;
        Ok((0..self.rows)
            .map(|i| self.row_shifted_degree(i, s))
            .collect())
    }

    fn row_shifted_degree(&self, i: usize, s: &Shift) -> Option<i64> {
        self.row(i)
            .iter()
            .zip(s.values())
            .filter_map(|(e, &sj)| e.degree().map(|d| d as i64 + sj))
            .max()
    }

    /// Shifted leading matrix; zero rows of `self` give zero rows.
    pub fn shifted_leading_matrix(&self, s: &Shift) -> Result<FieldMatrix> {
        let rdeg = self.shifted_row_degree(s)?;
        let mut lm = FieldMatrix::zeros(self.modulus, self.rows, self.cols);
        for (i, d) in rdeg.into_iter().enumerate() {
            let Some(d) = d else { continue };
            for j in 0..self.cols {
                let k = d - s.values()[j];
                if k >= 0 {
                    lm.set(i, j, self.get(i, j).coeff(k as usize));
                }
            }
        }
        Ok(lm)
    }

    /// Shifted pivot index (rightmost entry attaining the shifted row
    /// degree) and pivot degree of each row.
    pub fn pivot_profile(&self, s: &Shift) -> Result<PivotProfile> {
        self.check_shift(s)?;
        let mut indices = Vec::with_capacity(self.rows);
        let mut degrees = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let d = self.row_shifted_degree(i, s).ok_or(Error::ZeroRow(i))?;
            let j = (0..self.cols)
                .rev()
                .find(|&j| {
                    self.get(i, j)
                        .degree()
                        .is_some_and(|dj| dj as i64 + s.values()[j] == d)
                })
                .expect("row degree is attained");
            indices.push(j);
            degrees.push(self.get(i, j).degree().unwrap());
        }
        Ok(PivotProfile { indices, degrees })
    }

    /// Whether the matrix is `s`-reduced (full row rank leading matrix).
    pub fn is_reduced(&self, s: &Shift) -> Result<bool> {
        if self.rows > self.cols {
            return Err(Error::dim("reducedness needs rows <= columns"));
        }
        let lm = self.shifted_leading_matrix(s)?;
        Ok(lm.rank() == self.rows)
    }

    /// Whether the matrix is in `s`-Popov form. Zero rows make it false.
    pub fn is_popov(&self, s: &Shift) -> Result<bool> {
        if self.rows > self.cols {
            return Err(Error::dim("Popov form needs rows <= columns"));
        }
        let profile = match self.pivot_profile(s) {
            Ok(p) => p,
            Err(Error::ZeroRow(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        if profile.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Ok(false);
        }
        for (i, (&j, &d)) in profile.indices.iter().zip(&profile.degrees).enumerate() {
            if !self.get(i, j).is_monic() {
                return Ok(false);
            }
            for k in 0..self.rows {
                if k != i && self.get(k, j).degree().is_some_and(|dk| dk >= d) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `P * diag(X^s_1, ..., X^s_n)` after translating `s` to minimum 0.
    pub fn apply_shift_diag(&self, s: &Shift) -> Result<PolMat> {
        self.check_shift(s)?;
        let s = s.normalized();
        if s.values().iter().any(|&v| v < 0) {
            return Err(Error::InvalidShift(
                "negative entry after normalization".into(),
            ));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = out.get(i, j).shl(s.values()[j] as usize);
                out.set(i, j, e);
            }
        }
        Ok(out)
    }

    /// Maximum over permutations of the summed `deg_bar` of the selected
    /// entries: exhaustive search up to dimension 6, assignment beyond.
    pub fn generic_det_bound(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::dim(
                "generic determinant bound of a non-square matrix",
            ));
        }
        let n = self.rows;
        let w: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).deg_bar() as i64).collect())
            .collect();
        let best = if n <= 6 {
            max_assignment_exhaustive(&w)
        } else {
            max_assignment_hungarian(&w)
        };
        Ok(best as usize)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::dim("determinant of a non-square matrix"));
        }
        let f = self.modulus;
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(f));
        }
        let mut a = self.clone();
        let mut prev = Poly::one(f);
        let mut negate = false;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(Poly::zero(f));
            };
            if piv != k {
                a.swap_rows(piv, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(a.get(k, k) * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    a.set(i, j, q);
                }
                a.set(i, k, Poly::zero(f));
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if negate { -&d } else { d })
    }
}

impl fmt::Debug for PolMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "PolMat {}x{} over {:?} [",
            self.rows, self.cols, self.modulus
        )?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

fn max_assignment_exhaustive(w: &[Vec<i64>]) -> i64 {
    fn go(w: &[Vec<i64>], row: usize, used: &mut [bool]) -> i64 {
        if row == w.len() {
            return 0;
        }
        let mut best = i64::MIN;
        for j in 0..w.len() {
            if !used[j] {
                used[j] = true;
                best = best.max(w[row][j] + go(w, row + 1, used));
                used[j] = false;
            }
        }
        best
    }
    go(w, 0, &mut vec![false; w.len()])
}

/// Maximum-weight perfect matching on a square weight matrix
/// (Hungarian method with potentials, O(n^3)).
pub(crate) fn max_assignment_hungarian(w: &[Vec<i64>]) -> i64 {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    // minimize cost = -w; 1-based arrays with a virtual column 0
    let cost = |i: usize, j: usize| -w[i - 1][j - 1];
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut matched = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched[0] = i;
        let mut j0 = 0;
        let mut minv = vec![i64::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched[j0];
            let mut delta = i64::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched[j0] = matched[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| w[matched[j] - 1][j - 1]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn mat(p: u64, rows: &[&[&[i64]]]) -> PolMat {
        let rows: Vec<Vec<Vec<i64>>> = rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_vec()).collect())
            .collect();
        PolMat::from_coeff_rows(fp(p), &rows)
    }

    fn sh(v: &[i64]) -> Shift {
        Shift(v.to_vec())
    }

    #[test]
    fn shifted_row_degree_examples() {
        let p = mat(7, &[&[&[1, 0, 1], &[0, 1]]]);
        assert_eq!(p.shifted_row_degree(&sh(&[0, 0])).unwrap(), vec![Some(2)]);
        assert_eq!(p.shifted_row_degree(&sh(&[0, 5])).unwrap(), vec![Some(6)]);
        let z = mat(7, &[&[&[], &[]]]);
        assert_eq!(z.shifted_row_degree(&sh(&[0, 0])).unwrap(), vec![None]);
        assert!(matches!(
            p.shifted_row_degree(&sh(&[0])),
            Err(Error::InvalidShift(_))
        ));
    }

    #[test]
    fn leading_matrix_examples() {
        let f = fp(7);
        let p = mat(7, &[&[&[1, 0, 1], &[0, 1]]]);
        assert_eq!(
            p.shifted_leading_matrix(&sh(&[0, 0])).unwrap(),
            FieldMatrix::from_rows(f, &[vec![1, 0]])
        );
        let id = PolMat::identity(f, 3);
        assert_eq!(
            id.shifted_leading_matrix(&sh(&[4, -2, 9])).unwrap(),
            FieldMatrix::identity(f, 3)
        );
        let q = mat(7, &[&[&[0, 1], &[1]], &[&[], &[0, 1]]]);
        assert_eq!(
            q.shifted_leading_matrix(&sh(&[0, 1])).unwrap(),
            FieldMatrix::from_rows(f, &[vec![1, 1], vec![0, 1]])
        );
    }

    #[test]
    fn pivot_examples() {
        let p = mat(7, &[&[&[1, 0, 1], &[0, 1]]]);
        let pp = p.pivot_profile(&sh(&[0, 0])).unwrap();
        assert_eq!((pp.indices, pp.degrees), (vec![0], vec![2]));
        let pp = p.pivot_profile(&sh(&[0, 2])).unwrap();
        assert_eq!((pp.indices, pp.degrees), (vec![1], vec![1]));
        let ones = mat(7, &[&[&[1], &[1]]]);
        let pp = ones.pivot_profile(&sh(&[0, 0])).unwrap();
        assert_eq!((pp.indices, pp.degrees), (vec![1], vec![0]));
        let z = mat(7, &[&[&[], &[]]]);
        assert_eq!(z.pivot_profile(&sh(&[0, 0])), Err(Error::ZeroRow(0)));
    }

    #[test]
    fn pivot_profile_display_is_one_based() {
        let p = mat(7, &[&[&[0, 0, 1], &[]], &[&[6], &[1]]]);
        let pp = p.pivot_profile(&sh(&[0, 0])).unwrap();
        assert_eq!(pp.to_string(), "pivots: (1,2) degrees: (2,0)");
    }

    #[test]
    fn reducedness_examples() {
        let f = fp(5);
        assert!(PolMat::identity(f, 3).is_reduced(&sh(&[1, 2, 3])).unwrap());
        let a = mat(5, &[&[&[0, 1], &[]], &[&[0, 1], &[]]]);
        assert!(!a.is_reduced(&sh(&[0, 0])).unwrap());
        let b = mat(5, &[&[&[0, 1], &[1]], &[&[], &[0, 1]]]);
        assert!(b.is_reduced(&sh(&[0, 0])).unwrap());
        let tall = PolMat::identity(f, 3).select_cols(&[0, 1]);
        assert!(tall.is_reduced(&sh(&[0, 0])).is_err());
    }

    #[test]
    fn popov_examples() {
        let f = fp(7);
        assert!(PolMat::identity(f, 4)
            .is_popov(&sh(&[3, -1, 0, 8]))
            .unwrap());
        let a = mat(7, &[&[&[0, 0, 1], &[]], &[&[-1], &[1]]]);
        assert!(a.is_popov(&sh(&[0, 0])).unwrap());
        let b = mat(7, &[&[&[0, 0, 1], &[]], &[&[0, 0, 1], &[1]]]);
        assert!(!b.is_popov(&sh(&[0, 0])).unwrap());
        let non_monic = mat(7, &[&[&[0, 2]]]);
        assert!(!non_monic.is_popov(&sh(&[0])).unwrap());
        let zero_row = mat(7, &[&[&[1], &[]], &[&[], &[]]]);
        assert!(!zero_row.is_popov(&sh(&[0, 0])).unwrap());
    }

    #[test]
    fn det_bound_examples() {
        let f = fp(5);
        assert_eq!(PolMat::identity(f, 3).generic_det_bound().unwrap(), 0);
        assert_eq!(PolMat::zeros(f, 3, 3).generic_det_bound().unwrap(), 0);
        let a = mat(5, &[&[&[0, 0, 1], &[1]], &[&[0, 1], &[0, 1]]]);
        assert_eq!(a.generic_det_bound().unwrap(), 3);
        assert!(PolMat::zeros(f, 2, 3).generic_det_bound().is_err());
    }

    #[test]
    fn hungarian_agrees_with_exhaustive() {
        let mut state = 12345u64;
        let mut next = |m: u64| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        for n in 1..=7 {
            for _ in 0..50 {
                let w: Vec<Vec<i64>> = (0..n)
                    .map(|_| (0..n).map(|_| next(10) as i64).collect())
                    .collect();
                assert_eq!(max_assignment_hungarian(&w), max_assignment_exhaustive(&w));
            }
        }
    }

    #[test]
    fn product_examples() {
        let f = fp(5);
        let a = mat(5, &[&[&[1, 2], &[0, 0, 3]], &[&[4], &[]]]);
        assert_eq!(a.mul(&PolMat::identity(f, 2)), a);
        let x = mat(5, &[&[&[0, 1]]]);
        assert_eq!(x.mul(&x), mat(5, &[&[&[0, 0, 1]]]));
        let perm = mat(5, &[&[&[], &[1]], &[&[1], &[]]]);
        let v = mat(5, &[&[&[1, 1]], &[&[2]]]);
        assert_eq!(perm.mul(&v), mat(5, &[&[&[2]], &[&[1, 1]]]));
        assert!(a.try_mul(&v.transpose()).is_err());
    }

    #[test]
    fn col_mod_examples() {
        let f = fp(7);
        let a = mat(7, &[&[&[1, 2], &[3]]]);
        let m = [Poly::from_i64s(f, &[0, 0, 1]), Poly::from_i64s(f, &[1, 1])];
        assert_eq!(a.col_mod(&m).unwrap(), a);
        let b = mat(7, &[&[&[0, 0, 1]]]);
        assert!(b
            .col_mod(&[Poly::from_i64s(f, &[0, 0, 1])])
            .unwrap()
            .is_zero());
        let c = mat(7, &[&[&[0, 1, 0, 1]]]);
        assert!(c
            .col_mod(&[Poly::from_i64s(f, &[1, 0, 1])])
            .unwrap()
            .is_zero());
        assert_eq!(b.col_mod(&[Poly::zero(f)]), Err(Error::DivisionByZero));
    }

    #[test]
    fn shift_diag_examples() {
        let f = fp(7);
        let a = mat(7, &[&[&[1], &[1]]]);
        assert_eq!(a.apply_shift_diag(&sh(&[0, 0])).unwrap(), a);
        assert_eq!(
            a.apply_shift_diag(&sh(&[0, 2])).unwrap(),
            mat(7, &[&[&[1], &[0, 0, 1]]])
        );
        // translation is absorbed by normalization
        assert_eq!(
            a.apply_shift_diag(&sh(&[-3, -1])).unwrap(),
            mat(7, &[&[&[1], &[0, 0, 1]]])
        );
        let _ = f;
    }

    #[test]
    fn determinant_small() {
        let a = mat(7, &[&[&[0, 0, 0, 1], &[1]], &[&[1], &[1]]]);
        assert_eq!(
            a.determinant().unwrap(),
            Poly::from_i64s(fp(7), &[-1, 0, 0, 1])
        );
        let s = mat(7, &[&[&[0, 1], &[1]], &[&[0, 1], &[1]]]);
        assert!(s.determinant().unwrap().is_zero());
    }
}
