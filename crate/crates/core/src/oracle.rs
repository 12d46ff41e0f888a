//! Slow reference algorithms. They share only polynomial and polynomial
//! matrix arithmetic with the fast pipeline, so agreement between the two is
//! meaningful evidence of correctness.

use crate::error::{Error, Result};
use crate::polmat::{PolMat, Shift};
use crate::poly::Poly;

/// s-Popov form of a square nonsingular matrix by weak Popov reduction of
/// `A·diag(X^s)` followed by normalization.
pub fn naive_popov_form(a: &PolMat, s: &Shift) -> Result<PolMat> {
    if !a.is_square() {
        return Err(Error::dim("Popov form of a non-square matrix"));
    }
    let s = s.normalized();
    let mut b = a.apply_shift_diag(&s)?;
    let m = b.rows();
    let f = b.modulus();
    let zero = Shift::uniform(m);

    weak_popov_uniform(&mut b)?;

    // rows sorted by pivot index, pivots monic
    let prof = b.pivot_profile(&zero)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| prof.indices[i]);
    let mut b = b.select_rows(&order);
    let mut delta = vec![0usize; m];
    for i in 0..m {
        let lc = b.get(i, i).leading_coeff().expect("diagonal pivot");
        b.scale_row(i, f.inv(lc));
        delta[i] = b.get(i, i).degree().unwrap();
    }

    // each row only needs reducing against rows earlier in (δ, index) order
    let mut by_degree: Vec<usize> = (0..m).collect();
    by_degree.sort_by_key(|&i| (delta[i], i));
    for (pos, &i) in by_degree.iter().enumerate() {
        let done = &by_degree[..pos];
        let pivots: Vec<usize> = done.to_vec();
        let basis = b.clone();
        reduce_in_place(&mut b, i, &basis, &pivots, &delta, &zero);
    }

    // undo the column scaling
    let mut out = b;
    for i in 0..m {
        for j in 0..m {
            let e = out.get(i, j);
            let sj = s.values()[j] as usize;
            if !e.low_part_is_zero(sj) {
                return Err(Error::internal(
                    "Popov form of the scaled matrix is not divisible",
                ));
            }
            let e = e.shr(sj);
            out.set(i, j, e);
        }
    }
    Ok(out)
}

/// Mulders–Storjohann: cancel pivot collisions until every row has its own
/// pivot column (uniform shift). The larger-degree row is reduced by the
/// smaller one; on equal degrees the larger row index is reduced.
fn weak_popov_uniform(b: &mut PolMat) -> Result<()> {
    let m = b.rows();
    let zero = Shift::uniform(b.cols());
    let f = b.modulus();
    loop {
        let prof = match b.pivot_profile(&zero) {
            Ok(p) => p,
            Err(Error::ZeroRow(_)) => return Err(Error::Singular),
            Err(e) => return Err(e),
        };
        let mut collision = None;
        'search: for i in 0..m {
            for l in i + 1..m {
                if prof.indices[i] == prof.indices[l] {
                    collision = Some((i, l));
                    break 'search;
                }
            }
        }
        let Some((i, l)) = collision else {
            return Ok(());
        };
        let (keep, red) = if prof.degrees[l] >= prof.degrees[i] {
            (i, l)
        } else {
            (l, i)
        };
        let j = prof.indices[i];
        let e = prof.degrees[red] - prof.degrees[keep];
        let c = f.mul(
            b.get(red, j).leading_coeff().unwrap(),
            f.inv(b.get(keep, j).leading_coeff().unwrap()),
        );
        b.row_sub_scaled(red, keep, c, e);
    }
}

/// Reduces row `target` of `b` against the rows `pivots` of `basis`, whose
/// pivot column equals their row index and has degree `delta[row]`. The
/// term killed first is the one of largest (s-degree, column).
fn reduce_in_place(
    b: &mut PolMat,
    target: usize,
    basis: &PolMat,
    pivots: &[usize],
    delta: &[usize],
    s: &Shift,
) {
    let f = b.modulus();
    loop {
        let mut best: Option<(i64, usize)> = None;
        for &j in pivots {
            if let Some(d) = b.get(target, j).degree() {
                if d >= delta[j] {
                    let key = (d as i64 + s.values()[j], j);
                    if best.is_none_or(|b| key > b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, j)) = best else { return };
        let d = b.get(target, j).degree().unwrap();
        let c = f.mul(
            b.get(target, j).leading_coeff().unwrap(),
            f.inv(basis.get(j, j).leading_coeff().unwrap()),
        );
        for col in 0..b.cols() {
            let src = basis.get(j, col).clone();
            b.get_mut(target, col)
                .sub_scaled_shifted(&src, c, d - delta[j]);
        }
    }
}

/// s-Popov basis of `{p : p·F ≡ 0 mod M}` from a left kernel basis of
/// `[F; diag(M)]` computed by Euclidean row echelon with a tracked transform.
pub fn naive_solution_basis(moduli: &[Poly], f: &PolMat, s: &Shift) -> Result<PolMat> {
    let n = f.rows();
    let k = moduli.len();
    let field = f.modulus();
    if f.cols() != k {
        return Err(Error::dim(format!("{} moduli for {} columns", k, f.cols())));
    }
    if s.len() != n {
        return Err(Error::InvalidShift(format!(
            "shift has length {} for {n} unknowns",
            s.len()
        )));
    }
    if moduli.iter().any(Poly::is_zero) {
        return Err(Error::DivisionByZero);
    }
    if k == 0 {
        return Ok(PolMat::identity(field, n));
    }
    let stacked = f.stack(&PolMat::diagonal(field, moduli))?;
    let rows = n + k;
    // [N | I], row operations only
    let mut w = PolMat::from_fn(field, rows, k + rows, |i, j| {
        if j < k {
            stacked.get(i, j).clone()
        } else if j - k == i {
            Poly::one(field)
        } else {
            Poly::zero(field)
        }
    });
    let mut top = 0;
    for c in 0..k {
        loop {
            // smallest-degree nonzero entry at or below `top`
            let piv = (top..rows)
                .filter(|&i| !w.get(i, c).is_zero())
                .min_by_key(|&i| (w.get(i, c).degree().unwrap(), i));
            let Some(piv) = piv else { break };
            w.swap_rows(piv, top);
            let mut clean = true;
            for i in top + 1..rows {
                if w.get(i, c).is_zero() {
                    continue;
                }
                let q = w.get(i, c).div_rem(w.get(top, c)).0;
                w.row_sub_poly(i, top, &q);
                if !w.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !w.get(top, c).is_zero() {
            top += 1;
        }
    }
    if top != k {
        return Err(Error::internal("stacked system matrix lost rank"));
    }
    // rows top.. of the transform span the left kernel
    let kernel_rows: Vec<usize> = (top..rows).collect();
    let first: Vec<usize> = (k..k + n).collect();
    let basis = w.submatrix(&kernel_rows, &first);
    naive_popov_form(&basis, s)
}

/// Remainder of `v` (a 1×n matrix) modulo the row space of `p`, which must
/// be square and in s-Popov form. Zero iff `v` lies in the row space.
pub fn reduce_row_mod_basis(v: &PolMat, p: &PolMat, s: &Shift) -> Result<PolMat> {
    if v.rows() != 1 || v.cols() != p.cols() || !p.is_square() {
        return Err(Error::dim("expected a row vector and a square basis"));
    }
    if !p.is_popov(s)? {
        return Err(Error::Precondition("basis is not in s-Popov form".into()));
    }
    let delta = p.diagonal_degrees();
    let pivots: Vec<usize> = (0..p.rows()).collect();
    let mut r = v.clone();
    reduce_in_place(&mut r, 0, p, &pivots, &delta, s);
    Ok(r)
}

/// Whether `a` and `b` (in s-Popov form) generate the same row space:
/// every row of `a` reduces to zero against `b`, and the determinant degrees
/// agree.
pub fn row_space_equal(a: &PolMat, b: &PolMat, s: &Shift) -> Result<bool> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::dim("row space comparison needs equal square shapes"));
    }
    for i in 0..a.rows() {
        let r = reduce_row_mod_basis(&a.select_rows(&[i]), b, s)?;
        if !r.is_zero() {
            return Ok(false);
        }
    }
    let det = a.determinant()?;
    let pivot_sum: usize = b.diagonal_degrees().iter().sum();
    Ok(det.degree() == Some(pivot_sum))
}
