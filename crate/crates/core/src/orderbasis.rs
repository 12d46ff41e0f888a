//! Shifted Popov order bases: bases of `{p : p·F ≡ 0 mod (X^τ_1, ..., X^τ_k)}`.
//!
//! Two interchangeable engines produce an s-ordered weak Popov basis (the
//! pivot of row i sits in column i): an iterative elimination processing one
//! order condition at a time, and a divide-and-conquer variant that splits
//! the condition sequence in half and multiplies the two half bases. Either
//! way the canonical s-Popov basis is then recovered from the pivot degrees
//! δ: a second pass with shift −δ gives a basis whose −δ-leading matrix is
//! invertible, and left-multiplying by its inverse yields the Popov basis.

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::matrix::FieldMatrix;
use crate::ntt;
use crate::polmat::{PivotProfile, PolMat, Shift};
use crate::poly::{mul_slices, trim, Poly};

/// Total order above which [`Strategy::Auto`] switches to divide and conquer.
pub const DEFAULT_DC_THRESHOLD: usize = 256;

// shortest operand length for which products go through evaluation
const NTT_MIN_LEN: usize = 48;

/// Per-column orders τ_1, ..., τ_k, all at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec(Vec<usize>);

impl OrderSpec {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if let Some(j) = orders.iter().position(|&t| t == 0) {
            return Err(Error::Precondition(format!(
                "order of column {} must be at least 1",
                j + 1
            )));
        }
        Ok(OrderSpec(orders))
    }

    pub fn uniform(k: usize, order: usize) -> Result<Self> {
        Self::new(vec![order; k])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Which engine computes the underlying minimal basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Iterative,
    /// Divide and conquer, falling back to the iterative engine once the
    /// total order of a subproblem is at most `threshold`.
    DivideAndConquer {
        threshold: usize,
    },
    /// Divide and conquer with [`DEFAULT_DC_THRESHOLD`].
    Auto,
}

impl Strategy {
    fn threshold(self) -> usize {
        match self {
            Strategy::Iterative => usize::MAX,
            Strategy::DivideAndConquer { threshold } => threshold.max(1),
            Strategy::Auto => DEFAULT_DC_THRESHOLD,
        }
    }
}

/// The s-Popov order basis of `f` for orders `tau`, with its pivot profile.
pub fn popov_order_basis(f: &PolMat, tau: &OrderSpec, s: &Shift) -> Result<(PolMat, PivotProfile)> {
    popov_order_basis_with(f, tau, s, Strategy::Auto)
}

/// [`popov_order_basis`] with an explicit choice of engine.
pub fn popov_order_basis_with(
    f: &PolMat,
    tau: &OrderSpec,
    s: &Shift,
    strategy: Strategy,
) -> Result<(PolMat, PivotProfile)> {
    let m = f.rows();
    if s.len() != m {
        return Err(Error::InvalidShift(format!(
            "shift has length {} but the matrix has {m} rows",
            s.len()
        )));
    }
    if tau.len() != f.cols() {
        return Err(Error::dim(format!(
            "{} orders for {} columns",
            tau.len(),
            f.cols()
        )));
    }
    let field = f.modulus();
    let raw = RawMat::from_polmat_truncated(f, tau.values());
    let (p, delta) = popov_basis_raw(field, &raw, tau.values(), s.values(), strategy.threshold())?;
    let profile = PivotProfile {
        indices: (0..m).collect(),
        degrees: delta,
    };
    Ok((p.into_polmat(field), profile))
}

/// Column j of the result is `X^(-τ_done_j)·(P·F)_j`; the discarded low part
/// must vanish.
pub fn order_basis_residual(p: &PolMat, f: &PolMat, tau_done: &[usize]) -> Result<PolMat> {
    if tau_done.len() != f.cols() {
        return Err(Error::dim(format!(
            "{} orders for {} columns",
            tau_done.len(),
            f.cols()
        )));
    }
    let pf = p.try_mul(f)?;
    let mut out = pf.clone();
    for i in 0..pf.rows() {
        for (j, &t) in tau_done.iter().enumerate() {
            let e = pf.get(i, j);
            if !e.low_part_is_zero(t) {
                return Err(Error::internal(format!(
                    "residual entry ({}, {}) is not divisible by X^{t}",
                    i + 1,
                    j + 1
                )));
            }
            out.set(i, j, e.shr(t));
        }
    }
    Ok(out)
}

/// Dense row-major matrix of raw coefficient vectors (not necessarily trimmed).
#[derive(Clone, Debug)]
pub(crate) struct RawMat {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<Vec<u64>>,
}

impl RawMat {
    pub fn identity(n: usize) -> Self {
        let mut e = vec![Vec::new(); n * n];
        for i in 0..n {
            e[i * n + i] = vec![1];
        }
        RawMat {
            rows: n,
            cols: n,
            e,
        }
    }

    pub fn from_polmat(a: &PolMat) -> Self {
        RawMat {
            rows: a.rows(),
            cols: a.cols(),
            e: a.entries().iter().map(|p| p.coeffs().to_vec()).collect(),
        }
    }

    fn from_polmat_truncated(a: &PolMat, tau: &[usize]) -> Self {
        let mut r = Self::from_polmat(a);
        for i in 0..r.rows {
            for (j, &t) in tau.iter().enumerate() {
                let v = &mut r.e[i * r.cols + j];
                v.truncate(t);
                trim(v);
            }
        }
        r
    }

    pub fn into_polmat(self, f: PrimeModulus) -> PolMat {
        let cols = self.cols;
        let mut it = self.e.into_iter();
        PolMat::from_fn(f, self.rows, cols, |_, _| {
            Poly::from_canonical(f, it.next().unwrap())
        })
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &[u64] {
        &self.e[i * self.cols + j]
    }

    /// Keeps the listed columns, in order.
    fn select_cols(&self, cols: &[usize]) -> RawMat {
        let mut e = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                e.push(self.at(i, j).to_vec());
            }
        }
        RawMat {
            rows: self.rows,
            cols: cols.len(),
            e,
        }
    }

    /// Product `self·other`, with column j of the result restricted to the
    /// coefficient window `[lo_j, hi_j)` when windows are given.
    pub fn mul_window(
        &self,
        f: PrimeModulus,
        other: &RawMat,
        window: Option<&[(usize, usize)]>,
    ) -> RawMat {
        debug_assert_eq!(self.cols, other.rows);
        let (n, k) = (self.rows, other.cols);
        if let Some(e) = self.mul_window_ntt(f, other, window) {
            return RawMat {
                rows: n,
                cols: k,
                e,
            };
        }
        let mut e = Vec::with_capacity(n * k);
        for i in 0..n {
            for j in 0..k {
                let (lo, hi) = window.map_or((0, usize::MAX), |w| w[j]);
                let mut acc: Vec<u64> = Vec::new();
                for l in 0..self.cols {
                    let a = self.at(i, l);
                    let b = other.at(l, j);
                    if a.is_empty() || b.is_empty() {
                        continue;
                    }
                    // only coefficients below hi can matter
                    let b = &b[..b.len().min(hi)];
                    let a = &a[..a.len().min(hi)];
                    let prod = mul_slices(f, a, b);
                    if acc.len() < prod.len() {
                        acc.resize(prod.len(), 0);
                    }
                    for (x, y) in acc.iter_mut().zip(prod) {
                        *x = f.add(*x, y);
                    }
                }
                acc.truncate(hi);
                debug_assert!(acc.iter().take(lo).all(|&c| c == 0), "inexact residual");
                let mut v = if lo >= acc.len() {
                    Vec::new()
                } else {
                    acc.split_off(lo)
                };
                trim(&mut v);
                e.push(v);
            }
        }
        RawMat {
            rows: n,
            cols: k,
            e,
        }
    }

    /// Evaluation-based variant of [`RawMat::mul_window`] for operands long
    /// enough that transforming each entry once beats pairwise products.
    fn mul_window_ntt(
        &self,
        f: PrimeModulus,
        other: &RawMat,
        window: Option<&[(usize, usize)]>,
    ) -> Option<Vec<Vec<u64>>> {
        let hi_max = window.map_or(usize::MAX, |w| w.iter().map(|x| x.1).max().unwrap_or(0));
        let a: Vec<Vec<u64>> = self
            .e
            .iter()
            .map(|v| v[..v.len().min(hi_max)].to_vec())
            .collect();
        let mut b = other.e.clone();
        if let Some(w) = window {
            for (idx, v) in b.iter_mut().enumerate() {
                v.truncate(w[idx % other.cols].1);
            }
        }
        let short = |m: &[Vec<u64>]| m.iter().map(Vec::len).max().unwrap_or(0);
        if short(&a).min(short(&b)) < NTT_MIN_LEN {
            return None;
        }
        let mut e = ntt::mat_mul(f, &a, &b, self.rows, self.cols, other.cols)?;
        if let Some(w) = window {
            for (idx, v) in e.iter_mut().enumerate() {
                let (lo, hi) = w[idx % other.cols];
                v.truncate(hi);
                debug_assert!(v.iter().take(lo).all(|&c| c == 0), "inexact residual");
                *v = if lo >= v.len() {
                    Vec::new()
                } else {
                    v.split_off(lo)
                };
                trim(v);
            }
        }
        Some(e)
    }
}

/// s-Popov basis and pivot degrees from raw input already truncated to τ.
pub(crate) fn popov_basis_raw(
    f: PrimeModulus,
    fmat: &RawMat,
    tau: &[usize],
    s: &[i64],
    threshold: usize,
) -> Result<(RawMat, Vec<usize>)> {
    let m = fmat.rows;
    let weak = minimal_basis(f, fmat, tau, s, threshold);
    let delta = weak.delta;
    let neg: Vec<i64> = delta.iter().map(|&d| -(d as i64)).collect();
    let q = minimal_basis(f, fmat, tau, &neg, threshold);
    if q.delta != delta {
        return Err(Error::internal(format!(
            "second pass found pivot degrees {:?}, expected {:?}",
            q.delta, delta
        )));
    }
    // −δ-leading matrix; every −δ-row degree is 0
    let mut lm = FieldMatrix::zeros(f, m, m);
    for i in 0..m {
        for (j, &d) in delta.iter().enumerate() {
            let v = q.p.at(i, j);
            if v.len() > d + 1 {
                return Err(Error::internal(
                    "second-pass basis exceeds the column degree bound",
                ));
            }
            lm.set(i, j, v.get(d).copied().unwrap_or(0));
        }
    }
    let inv = lm
        .inverse()
        .ok_or_else(|| Error::internal("second-pass basis is not reduced"))?;
    let mut out = RawMat {
        rows: m,
        cols: m,
        e: Vec::with_capacity(m * m),
    };
    for i in 0..m {
        for j in 0..m {
            let mut acc = vec![0u64; delta[j] + 1];
            for l in 0..m {
                let c = inv.get(i, l);
                if c == 0 {
                    continue;
                }
                for (x, &y) in acc.iter_mut().zip(q.p.at(l, j)) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            trim(&mut acc);
            out.e.push(acc);
        }
    }
    Ok((out, delta))
}

/// An s-ordered weak Popov basis: row i has its s-pivot in column i, of
/// degree `delta[i]`.
pub(crate) struct WeakBasis {
    pub p: RawMat,
    pub delta: Vec<usize>,
}

pub(crate) fn minimal_basis(
    f: PrimeModulus,
    fmat: &RawMat,
    tau: &[usize],
    s: &[i64],
    threshold: usize,
) -> WeakBasis {
    let active: Vec<usize> = (0..tau.len()).filter(|&j| tau[j] > 0).collect();
    if active.len() < tau.len() {
        let tau: Vec<usize> = active.iter().map(|&j| tau[j]).collect();
        return minimal_basis(f, &fmat.select_cols(&active), &tau, s, threshold);
    }
    let total: usize = tau.iter().sum();
    if total <= threshold || total <= 1 {
        return iterative(f, fmat, tau, s);
    }

    // first half of the condition sequence ordered by (coefficient, column)
    let half = total / 2;
    let mut tau1 = vec![0usize; tau.len()];
    let mut taken = 0;
    'outer: for c in 0.. {
        for j in 0..tau.len() {
            if taken == half {
                break 'outer;
            }
            if tau[j] > c {
                tau1[j] += 1;
                taken += 1;
            }
        }
    }
    let f1 = truncate_cols(fmat, &tau1);
    let b1 = minimal_basis(f, &f1, &tau1, s, threshold);

    let t: Vec<i64> = s
        .iter()
        .zip(&b1.delta)
        .map(|(&si, &d)| si + d as i64)
        .collect();
    let window: Vec<(usize, usize)> = tau1.iter().zip(tau).map(|(&a, &b)| (a, b)).collect();
    let tau2: Vec<usize> = tau.iter().zip(&tau1).map(|(&a, &b)| a - b).collect();
    let residual = b1.p.mul_window(f, fmat, Some(&window));
    let b2 = minimal_basis(f, &residual, &tau2, &t, threshold);

    let p = b2.p.mul_window(f, &b1.p, None);
    let delta = b1.delta.iter().zip(&b2.delta).map(|(a, b)| a + b).collect();
    WeakBasis { p, delta }
}

fn truncate_cols(a: &RawMat, tau: &[usize]) -> RawMat {
    let mut r = a.clone();
    for i in 0..r.rows {
        for (j, &t) in tau.iter().enumerate() {
            let v = &mut r.e[i * r.cols + j];
            v.truncate(t);
            trim(v);
        }
    }
    r
}

/// `dst[lo..] -= c * src[lo..]`, growing `dst` as needed.
#[inline]
fn axpy(f: PrimeModulus, dst: &mut Vec<u64>, src: &[u64], c: u64, lo: usize) {
    if src.len() > dst.len() {
        dst.resize(src.len(), 0);
    }
    if lo >= src.len() {
        return;
    }
    for (d, &x) in dst[lo..].iter_mut().zip(&src[lo..]) {
        *d = f.sub_mul(*d, c, x);
    }
}

fn two_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    debug_assert_ne!(a, b);
    if a < b {
        let (x, y) = v.split_at_mut(b);
        (&mut x[a], &y[0])
    } else {
        let (x, y) = v.split_at_mut(a);
        (&mut y[0], &x[b])
    }
}

/// One order condition at a time: the row of least (s-degree, index) with a
/// nonzero residual coefficient eliminates the others, then gets multiplied
/// by X.
fn iterative(f: PrimeModulus, fmat: &RawMat, tau: &[usize], s: &[i64]) -> WeakBasis {
    let m = fmat.rows;
    let k = tau.len();
    let mut res: Vec<Vec<u64>> = Vec::with_capacity(m * k);
    for i in 0..m {
        for (j, &t) in tau.iter().enumerate() {
            let mut v = fmat.at(i, j).to_vec();
            v.resize(t, 0);
            res.push(v);
        }
    }
    let mut p = RawMat::identity(m);
    let mut delta = vec![0usize; m];
    let max_tau = tau.iter().copied().max().unwrap_or(0);

    for c in 0..max_tau {
        for j in 0..k {
            if tau[j] <= c {
                continue;
            }
            let mut piv: Option<usize> = None;
            for i in 0..m {
                if res[i * k + j][c] != 0 {
                    let better = match piv {
                        None => true,
                        Some(q) => s[i] + (delta[i] as i64) < s[q] + (delta[q] as i64),
                    };
                    if better {
                        piv = Some(i);
                    }
                }
            }
            let Some(pi) = piv else { continue };
            let inv = f.inv(res[pi * k + j][c]);
            for l in 0..m {
                if l == pi {
                    continue;
                }
                let a = res[l * k + j][c];
                if a == 0 {
                    continue;
                }
                let coef = f.mul(a, inv);
                for jj in 0..m {
                    let (dst, src) = two_mut(&mut p.e, l * m + jj, pi * m + jj);
                    axpy(f, dst, src, coef, 0);
                }
                for jj in 0..k {
                    let (dst, src) = two_mut(&mut res, l * k + jj, pi * k + jj);
                    axpy(f, dst, src, coef, c);
                }
            }
            for jj in 0..m {
                let v = &mut p.e[pi * m + jj];
                if !v.is_empty() {
                    v.insert(0, 0);
                }
            }
            for jj in 0..k {
                let v = &mut res[pi * k + jj];
                if !v.is_empty() {
                    v.pop();
                    v.insert(0, 0);
                }
            }
            delta[pi] += 1;
        }
    }
    for v in &mut p.e {
        trim(v);
    }
    WeakBasis { p, delta }
}
