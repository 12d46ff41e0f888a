//! Shifted Popov and Hermite forms of nonsingular matrices.
//!
//! The row space of `A` is the solution module of a modular system read off
//! a Smith decomposition `U·A·V = diag(s_1, ..., s_m)`: the moduli are the
//! nontrivial invariant factors and the equations are the matching columns
//! of `V`. Partial linearization first makes all degrees close to the
//! average `σ(A)/m`.

use crate::error::{Error, Result};
use crate::modsys::{solution_basis, ModularSystem};
use crate::polmat::{PolMat, Shift};
use crate::poly::Poly;

/// Invariant factors of a nonsingular matrix together with the columns of a
/// right transform reduced modulo them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Monic, each dividing the next.
    pub invariants: Vec<Poly>,
    /// `V mod diag(invariants)`, column j reduced modulo `invariants[j]`.
    pub right_transform_mod: PolMat,
}

/// Smith form by elementary row and column operations. Only column
/// operations are recorded, on a transform kept modulo `det A`.
pub fn smith_with_right_transform(a: &PolMat) -> Result<SmithDecomposition> {
    if !a.is_square() {
        return Err(Error::dim("Smith form of a non-square matrix"));
    }
    let f = a.modulus();
    let m = a.rows();
    let det = a.determinant()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let det = det.monic();
    let reduce = |e: &Poly| {
        if det.degree() > Some(0) {
            e.rem(&det)
        } else {
            Poly::zero(f)
        }
    };
    let mut w = a.clone();
    let mut v = PolMat::identity(f, m);
    if det.is_one() {
        // unimodular: every invariant is 1 and V mod 1 vanishes
        v = PolMat::zeros(f, m, m);
    }

    for k in 0..m {
        loop {
            let Some((pi, pj)) = min_degree_entry(&w, k) else {
                return Err(Error::Singular);
            };
            w.swap_rows(k, pi);
            if pj != k {
                w.swap_cols(k, pj);
                v.swap_cols(k, pj);
            }
            let pivot = w.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..m {
                if w.get(i, k).is_zero() {
                    continue;
                }
                let q = w.get(i, k).div_rem(&pivot).0;
                w.row_sub_poly(i, k, &q);
                dirty |= !w.get(i, k).is_zero();
            }
            for j in k + 1..m {
                if w.get(k, j).is_zero() {
                    continue;
                }
                let q = w.get(k, j).div_rem(&pivot).0;
                w.col_sub_poly(j, k, &q);
                v.col_sub_poly(j, k, &q);
                for i in 0..m {
                    let e = reduce(v.get(i, j));
                    v.set(i, j, e);
                }
                dirty |= !w.get(k, j).is_zero();
            }
            if dirty {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (k + 1..m).find(|&i| (k + 1..m).any(|j| !w.get(i, j).rem(&pivot).is_zero()));
            match bad {
                Some(i) => {
                    for j in k..m {
                        let e = w.get(i, j).clone();
                        w.get_mut(k, j).add_assign_poly(&e);
                    }
                }
                None => break,
            }
        }
        let lc = w.get(k, k).leading_coeff().unwrap();
        w.scale_row(k, f.inv(lc));
    }

    let invariants: Vec<Poly> = (0..m).map(|i| w.get(i, i).clone()).collect();
    let right_transform_mod = v.col_mod(&invariants)?;
    Ok(SmithDecomposition {
        invariants,
        right_transform_mod,
    })
}

fn min_degree_entry(w: &PolMat, k: usize) -> Option<(usize, usize)> {
    let m = w.rows();
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..m {
        for j in k..m {
            if let Some(d) = w.get(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                    if d == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Modular system whose solution module is the row space of `a`.
pub fn system_from_matrix(a: &PolMat, s: &Shift) -> Result<ModularSystem> {
    let smith = smith_with_right_transform(a)?;
    let keep: Vec<usize> = (0..smith.invariants.len())
        .filter(|&j| smith.invariants[j].deg_bar() > 0)
        .collect();
    let moduli = keep.iter().map(|&j| smith.invariants[j].clone()).collect();
    let eq = smith.right_transform_mod.select_cols(&keep);
    ModularSystem::new(moduli, eq, s.clone())
}

/// Column partial linearization: columns of degree above the average are
/// cut into pieces of degree below `δ̄ = 1 + ⌊Σδ/m⌋`, with stitching rows
/// `-X^δ̄` / `1` restoring the module.
pub fn col_partial_linearization(a: &PolMat, delta: &[usize]) -> Result<PolMat> {
    if !a.is_square() || delta.len() != a.cols() {
        return Err(Error::dim(
            "column linearization needs a square matrix and one degree per column",
        ));
    }
    let delta_bar = 1 + delta.iter().sum::<usize>() / delta.len().max(1);
    let alpha: Vec<usize> = delta.iter().map(|&d| d / delta_bar + 1).collect();
    Ok(linearize_cols(a, delta_bar, &alpha))
}

/// Row partial linearization, the transpose of the column version on `Aᵀ`.
pub fn row_partial_linearization(a: &PolMat, delta: &[usize]) -> Result<PolMat> {
    Ok(col_partial_linearization(&a.transpose(), delta)?.transpose())
}

/// Cuts column j into `alpha[j]` pieces of `block` coefficients, the last
/// piece keeping everything above. Extra columns follow the original ones,
/// block by block, each with its stitching row.
fn linearize_cols(a: &PolMat, block: usize, alpha: &[usize]) -> PolMat {
    let f = a.modulus();
    let m = a.rows();
    let n_tilde = m + alpha.iter().map(|&x| x - 1).sum::<usize>();
    let mut out = PolMat::zeros(f, n_tilde, n_tilde);
    let mut extra = m;
    for j in 0..m {
        let mut prev = j;
        for k in 0..alpha[j] {
            let col = if k == 0 { j } else { extra };
            let lo = k * block;
            let last = k + 1 == alpha[j];
            for i in 0..m {
                let c = a.get(i, j).coeffs();
                let hi = if last {
                    c.len()
                } else {
                    (lo + block).min(c.len())
                };
                if lo < hi {
                    out.set(i, col, Poly::from_coeffs(f, c[lo..hi].to_vec()));
                }
            }
            if k > 0 {
                // stitching row sits on the diagonal of its extra column
                out.set(col, prev, Poly::monomial(f, f.neg(1), block));
                out.set(col, col, Poly::one(f));
                prev = col;
                extra += 1;
            }
        }
    }
    out
}

/// How [`reduce_to_uniform`] expanded the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationPlan {
    /// Common piece length `D = ⌈Σ row_degrees / m⌉` of both steps.
    pub block: usize,
    /// Target row degrees for the row step.
    pub row_degrees: Vec<usize>,
    /// Column degrees after the row step, targets of the column step.
    pub column_degrees: Vec<usize>,
    pub row_blocks: Vec<usize>,
    pub column_blocks: Vec<usize>,
    /// Dimension of the expanded matrix; its first `original` rows and
    /// columns correspond to those of the input.
    pub dimension: usize,
    pub original: usize,
}

impl LinearizationPlan {
    pub fn is_trivial(&self) -> bool {
        self.dimension == self.original
    }
}

/// Expands `a` into a matrix of degree at most `⌈σ(A)/m⌉` and dimension
/// below `3m` whose `u`-Popov form has the s-Popov form of `a` as leading
/// principal block.
///
/// Rows are linearized against the diagonal degrees of a degree-dominant
/// permutation of `a`, then columns against the resulting column degrees.
/// Both steps cut into pieces of the same length `D` and let the last piece
/// reach degree `D`, so that stitching entries never exceed the bound.
pub fn reduce_to_uniform(a: &PolMat, s: &Shift) -> Result<(PolMat, Shift, LinearizationPlan)> {
    if !a.is_square() || s.len() != a.rows() {
        return Err(Error::dim("expected a square matrix and a matching shift"));
    }
    let m = a.rows();
    let (rows_order, cols_order) = dominant_diagonal_order(a);
    // δ_{π1(i)} = deḡ(b_ii)
    let mut row_degrees = vec![0usize; m];
    for i in 0..m {
        row_degrees[rows_order[i]] = a.get(rows_order[i], cols_order[i]).deg_bar();
    }
    let block = row_degrees.iter().sum::<usize>().div_ceil(m.max(1)).max(1);
    let pieces =
        |d: &[usize]| -> Vec<usize> { d.iter().map(|&x| x.div_ceil(block).max(1)).collect() };

    let row_blocks = pieces(&row_degrees);
    let lin_rows = linearize_cols(&a.transpose(), block, &row_blocks).transpose();
    let column_degrees = lin_rows.column_degrees();
    let column_blocks = pieces(&column_degrees);
    let expanded = linearize_cols(&lin_rows, block, &column_blocks);

    let dim = expanded.rows();
    let t = s.max() + (m * a.degree().unwrap_or(0)) as i64;
    let mut u = s.values().to_vec();
    u.resize(dim, t);
    let plan = LinearizationPlan {
        block,
        row_degrees,
        column_degrees,
        row_blocks,
        column_blocks,
        dimension: dim,
        original: m,
    };
    Ok((expanded, Shift(u), plan))
}

/// Row and column orders such that each diagonal entry of the permuted
/// matrix has maximal degree within its trailing block.
fn dominant_diagonal_order(a: &PolMat) -> (Vec<usize>, Vec<usize>) {
    let m = a.rows();
    let mut rows: Vec<usize> = (0..m).collect();
    let mut cols: Vec<usize> = (0..m).collect();
    for i in 0..m {
        let mut best = (i, i);
        let mut best_deg = -1i64;
        for r in i..m {
            for c in i..m {
                let d = a.get(rows[r], cols[c]).degree().map_or(-1, |d| d as i64);
                if d > best_deg {
                    best_deg = d;
                    best = (r, c);
                }
            }
        }
        rows.swap(i, best.0);
        cols.swap(i, best.1);
    }
    (rows, cols)
}

/// The s-Popov form of a square nonsingular matrix.
pub fn popov_form(a: &PolMat, s: &Shift) -> Result<PolMat> {
    if !a.is_square() {
        return Err(Error::dim("Popov form of a non-square matrix"));
    }
    if s.len() != a.rows() {
        return Err(Error::InvalidShift(format!(
            "shift has length {} for a {}x{} matrix",
            s.len(),
            a.rows(),
            a.cols()
        )));
    }
    let (expanded, u, _) = reduce_to_uniform(a, s)?;
    let sys = system_from_matrix(&expanded, &u)?;
    let (p, _) = solution_basis(&sys)?;
    Ok(p.principal(a.rows()))
}

/// The Hermite shift `(0, δ, ..., (m-1)δ)` with `δ = m·deg A`.
pub fn hermite_shift(a: &PolMat) -> Shift {
    let m = a.rows();
    Shift::hermite(m, (m * a.degree().unwrap_or(0)) as i64)
}

/// Lower triangular Hermite form: the Popov form for [`hermite_shift`].
pub fn hermite_form(a: &PolMat) -> Result<PolMat> {
    popov_form(a, &hermite_shift(a))
}
