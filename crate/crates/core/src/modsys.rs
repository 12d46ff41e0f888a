//! Solution bases of modular systems: the s-Popov basis of
//! `{p : p·F ≡ 0 mod (m_1, ..., m_k)}` column-wise.
//!
//! [`solution_basis`] splits the moduli in half and recurses, down to single
//! equations handled by [`solution_basis_one`]. Both finish by
//! reconstructing the basis from its known pivot degrees through
//! [`known_degree_solution_basis`].

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::orderbasis::{popov_order_basis, OrderSpec};
use crate::polmat::{PolMat, Shift};
use crate::poly::Poly;

/// Pivot degrees of a solution basis.
pub type MinimalDegree = Vec<usize>;

/// Moduli `m_1, ..., m_k`, an `n×k` equation matrix with
/// `deg F_j < deg m_j`, and a shift on the `n` unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularSystem {
    moduli: Vec<Poly>,
    equations: PolMat,
    shift: Shift,
}

impl ModularSystem {
    pub fn new(moduli: Vec<Poly>, equations: PolMat, shift: Shift) -> Result<Self> {
        if moduli.len() != equations.cols() {
            return Err(Error::dim(format!(
                "{} moduli for {} equation columns",
                moduli.len(),
                equations.cols()
            )));
        }
        if shift.len() != equations.rows() {
            return Err(Error::InvalidShift(format!(
                "shift has length {} for {} unknowns",
                shift.len(),
                equations.rows()
            )));
        }
        let f = equations.modulus();
        for (j, m) in moduli.iter().enumerate() {
            if m.modulus() != f {
                return Err(Error::ModulusMismatch {
                    left: f.value(),
                    right: m.modulus().value(),
                });
            }
            let Some(dm) = m.degree() else {
                return Err(Error::DivisionByZero);
            };
            for i in 0..equations.rows() {
                if equations.get(i, j).degree().is_some_and(|d| d >= dm) {
                    return Err(Error::Precondition(format!(
                        "entry ({}, {}) has degree at least deg m_{} = {dm}",
                        i + 1,
                        j + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(ModularSystem {
            moduli,
            equations,
            shift,
        })
    }

    /// Reduces every column modulo its modulus first.
    pub fn reduced(moduli: Vec<Poly>, equations: &PolMat, shift: Shift) -> Result<Self> {
        let f = equations.col_mod(&moduli)?;
        Self::new(moduli, f, shift)
    }

    pub fn moduli(&self) -> &[Poly] {
        &self.moduli
    }

    pub fn equations(&self) -> &PolMat {
        &self.equations
    }

    pub fn shift(&self) -> &Shift {
        &self.shift
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.equations.modulus()
    }

    pub fn unknowns(&self) -> usize {
        self.equations.rows()
    }

    /// σ, the sum of the moduli degrees.
    pub fn sigma(&self) -> usize {
        self.moduli.iter().map(Poly::deg_bar).sum()
    }

    pub fn with_shift(&self, shift: Shift) -> Result<Self> {
        Self::new(self.moduli.clone(), self.equations.clone(), shift)
    }

    /// Whether every row of `p` solves the system.
    pub fn is_solved_by(&self, p: &PolMat) -> Result<bool> {
        Ok(p.try_mul(&self.equations)?.col_mod(&self.moduli)?.is_zero())
    }
}

/// Expansion of a degree tuple into near-uniform blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    /// Block length δ̄.
    pub delta_bar: usize,
    /// Number of blocks per entry.
    pub alpha: Vec<usize>,
    /// Block degrees `(δ̄, ..., δ̄, β_i)` for each entry, concatenated.
    pub delta_tilde: Vec<usize>,
    /// `ñ×n`, row `k` of block `i` equal to `X^(k·δ̄)` in column `i`.
    pub e: PolMat,
}

/// Splits each `δ_i` into `α_i = ⌊δ_i/δ̄⌋ + 1` pieces with `δ̄ = ⌈σ/n⌉`.
pub fn expand_min_degree(f: PrimeModulus, delta: &[usize], sigma: usize) -> Result<Expansion> {
    let n = delta.len();
    if delta.iter().sum::<usize>() > sigma {
        return Err(Error::Precondition(format!(
            "degrees {delta:?} exceed sigma = {sigma}"
        )));
    }
    let delta_bar = sigma.div_ceil(n.max(1)).max(1);
    let alpha: Vec<usize> = delta.iter().map(|&d| d / delta_bar + 1).collect();
    let total: usize = alpha.iter().sum();
    let mut delta_tilde = Vec::with_capacity(total);
    let mut e = PolMat::zeros(f, total, n);
    let mut row = 0;
    for (i, (&d, &a)) in delta.iter().zip(&alpha).enumerate() {
        for k in 0..a {
            delta_tilde.push(if k + 1 < a {
                delta_bar
            } else {
                d - (a - 1) * delta_bar
            });
            e.set(row, i, Poly::monomial(f, 1, k * delta_bar));
            row += 1;
        }
    }
    Ok(Expansion {
        delta_bar,
        alpha,
        delta_tilde,
        e,
    })
}

/// The s-Popov solution basis, given its pivot degrees `delta`.
pub fn known_degree_solution_basis(sys: &ModularSystem, delta: &[usize]) -> Result<PolMat> {
    let f = sys.modulus();
    let n = sys.unknowns();
    let k = sys.moduli.len();
    if delta.len() != n {
        return Err(Error::dim(format!(
            "{} degrees for {n} unknowns",
            delta.len()
        )));
    }
    let sigma = sys.sigma();
    let exp = expand_min_degree(f, delta, sigma)
        .map_err(|e| Error::InconsistentMinimalDegree(e.to_string()))?;
    let n_tilde = exp.delta_tilde.len();
    let candidate = if k == 0 {
        PolMat::identity(f, n)
    } else {
        let f_tilde = exp.e.mul(&sys.equations).col_mod(&sys.moduli)?;
        let stacked = f_tilde.stack(&PolMat::diagonal(f, &sys.moduli))?;
        let db = exp.delta_bar as i64;
        let mut u: Vec<i64> = exp.delta_tilde.iter().map(|&d| -(d as i64)).collect();
        u.extend(std::iter::repeat_n(-db - 1, k));
        let tau = OrderSpec::new(
            sys.moduli
                .iter()
                .map(|m| m.deg_bar() + exp.delta_bar + 1)
                .collect(),
        )?;
        let (basis, _) = popov_order_basis(&stacked, &tau, &Shift(u))?;
        let p_tilde = basis.principal(n_tilde);
        let rows: Vec<usize> = exp
            .alpha
            .iter()
            .scan(0, |acc, &a| {
                *acc += a;
                Some(*acc - 1)
            })
            .collect();
        p_tilde.mul(&exp.e).select_rows(&rows)
    };
    if !candidate.is_popov(&sys.shift)? {
        return Err(Error::InconsistentMinimalDegree(
            "reconstructed basis is not in shifted Popov form".into(),
        ));
    }
    if candidate.diagonal_degrees() != delta {
        return Err(Error::InconsistentMinimalDegree(format!(
            "reconstructed pivot degrees {:?} differ from {delta:?}",
            candidate.diagonal_degrees()
        )));
    }
    if !sys.is_solved_by(&candidate)? {
        return Err(Error::InconsistentMinimalDegree(
            "reconstructed basis does not solve the system".into(),
        ));
    }
    Ok(candidate)
}

/// Buckets of original indices: bucket k holds the entries of `s` in
/// `[min + kα, min + (k+1)α)`, each bucket in stable sorted order.
pub fn partition_shift(s: &Shift, alpha: usize) -> Vec<Vec<usize>> {
    assert!(alpha >= 1, "bucket width must be positive");
    if s.is_empty() {
        return vec![Vec::new()];
    }
    let lo = s.min();
    let a = alpha as i64;
    let count = 1 + (s.amplitude() / a) as usize;
    let mut buckets = vec![Vec::new(); count];
    for i in s.sorting_permutation() {
        buckets[((s.values()[i] - lo) / a) as usize].push(i);
    }
    buckets
}

/// Largest `i` in `[1, n-1]` such that, in stable sorted order of `t`, each of
/// the first `i` entries satisfies `δ + t < t` of entry `i+1`.
pub fn largest_splitting_index(delta: &[usize], t: &Shift) -> Option<usize> {
    assert_eq!(delta.len(), t.len());
    let mu = t.sorting_permutation();
    let tv = t.values();
    // prefix maxima of δ_{μ_j} + t_{μ_j}
    let mut best = None;
    let mut reach = i64::MIN;
    for i in 1..mu.len() {
        let j = mu[i - 1];
        reach = reach.max(delta[j] as i64 + tv[j]);
        if reach < tv[mu[i]] {
            best = Some(i);
        }
    }
    best
}

/// Counters recorded by [`solution_basis_one_instrumented`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecursionStats {
    pub calls: usize,
    pub max_depth: usize,
    pub base_cases: usize,
    pub splitting_branches: usize,
    /// Divisions by `X^(2σ)` whose discarded low part was checked to vanish.
    pub exact_divisions: usize,
}

/// s-Popov solution basis of a single equation `p·F ≡ 0 mod m`, with
/// `α ≥ 2·deg m`.
pub fn solution_basis_one(
    m: &Poly,
    f: &PolMat,
    s: &Shift,
    alpha: usize,
) -> Result<(PolMat, MinimalDegree)> {
    solution_basis_one_instrumented(m, f, s, alpha).map(|(p, d, _)| (p, d))
}

/// [`solution_basis_one`] together with recursion counters.
pub fn solution_basis_one_instrumented(
    m: &Poly,
    f: &PolMat,
    s: &Shift,
    alpha: usize,
) -> Result<(PolMat, MinimalDegree, RecursionStats)> {
    let sys = ModularSystem::new(vec![m.clone()], f.clone(), s.clone())?;
    let sigma = sys.sigma();
    if alpha < 2 * sigma {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} is below 2·deg m = {}",
            2 * sigma
        )));
    }
    let mut stats = RecursionStats::default();
    let (p, d) = one(&sys, alpha.max(1), 1, &mut stats)?;
    Ok((p, d, stats))
}

/// Shrinks gaps between consecutive sorted entries to at most `bound`.
pub fn clamp_shift_gaps(s: &Shift, bound: i64) -> Shift {
    let perm = s.sorting_permutation();
    let mut out = s.values().to_vec();
    for w in 1..perm.len() {
        let (prev, cur) = (perm[w - 1], perm[w]);
        let gap = (s.values()[cur] - s.values()[prev]).min(bound);
        out[cur] = out[prev] + gap;
    }
    Shift(out)
}

fn one(
    sys: &ModularSystem,
    alpha: usize,
    depth: usize,
    stats: &mut RecursionStats,
) -> Result<(PolMat, MinimalDegree)> {
    stats.calls += 1;
    stats.max_depth = stats.max_depth.max(depth);
    let field = sys.modulus();
    let n = sys.unknowns();
    let m = &sys.moduli[0];
    let sigma = sys.sigma();
    if sigma == 0 {
        stats.base_cases += 1;
        return Ok((PolMat::identity(field, n), vec![0; n]));
    }
    let s = clamp_shift_gaps(&sys.shift, sigma as i64);
    let f = &sys.equations;
    let stacked = f.stack(&PolMat::from_rows(field, vec![vec![m.clone()]])?)?;

    if s.amplitude() <= 2 * alpha as i64 {
        stats.base_cases += 1;
        let u = s.concat(&Shift(vec![s.min()]));
        let tau = OrderSpec::uniform(1, 2 * alpha + 2 * sigma)?;
        let (basis, _) = popov_order_basis(&stacked, &tau, &u)?;
        let p = basis.principal(n);
        let d = p.diagonal_degrees();
        return Ok((p, d));
    }

    // lowest buckets first
    let buckets = partition_shift(&s, alpha);
    let half = buckets.len().div_ceil(2);
    let mut low: Vec<usize> = buckets[..half].iter().flatten().copied().collect();
    low.sort_unstable();
    let sub = ModularSystem::new(vec![m.clone()], f.select_rows(&low), s.select(&low))?;
    let (_, delta0) = one(&sub, alpha, depth + 1, stats)?;

    let i = largest_splitting_index(&delta0, sub.shift())
        .ok_or_else(|| Error::internal("no splitting index in the lower half of the shift"))?;
    stats.splitting_branches += 1;
    let mu0 = sub.shift().sorting_permutation();
    let mut block1: Vec<usize> = mu0[..i].iter().map(|&r| low[r]).collect();
    block1.sort_unstable();
    let block2: Vec<usize> = (0..n).filter(|r| !block1.contains(r)).collect();
    let delta1: Vec<usize> = block1
        .iter()
        .map(|&r| delta0[low.iter().position(|&x| x == r).unwrap()])
        .collect();

    let s2 = s.select(&block2);
    let two_sigma = 2 * sigma as i64;
    let d: Vec<i64> = delta1
        .iter()
        .map(|&x| s2.min() - x as i64 - two_sigma)
        .collect();
    let mut v = vec![0i64; n];
    for (&r, &dr) in block1.iter().zip(&d) {
        v[r] = dr;
    }
    for (&r, &sr) in block2.iter().zip(s2.values()) {
        v[r] = sr;
    }
    let u = Shift(v).concat(&Shift(vec![d.iter().copied().min().unwrap()]));
    let tau = OrderSpec::uniform(1, 2 * sigma)?;
    let (basis, _) = popov_order_basis(&stacked, &tau, &u)?;

    let a22 = basis.submatrix(&block2, &block2);
    if !a22.is_popov(&s2)? {
        return Err(Error::internal(
            "trailing order-basis block is not in shifted Popov form",
        ));
    }
    let delta2 = a22.diagonal_degrees();

    // residual system, by exact division by X^(2σ)
    let shifted_down = |e: &Poly| -> Result<Poly> {
        if !e.low_part_is_zero(2 * sigma) {
            return Err(Error::internal("division by X^(2σ) is not exact"));
        }
        Ok(e.shr(2 * sigma))
    };
    let residual = basis.select_rows(&block2).mul(&stacked);
    let mut g = PolMat::zeros(field, block2.len(), 1);
    for r in 0..block2.len() {
        g.set(r, 0, shifted_down(residual.get(r, 0))?);
        stats.exact_divisions += 1;
    }
    let last = basis.select_rows(&[n]).mul(&stacked);
    let new_m = shifted_down(last.get(0, 0))?;
    stats.exact_divisions += 1;
    if new_m.is_zero() {
        return Err(Error::internal("residual modulus vanished"));
    }
    let scale = field.inv(new_m.leading_coeff().unwrap());
    let new_m = new_m.scale(scale);
    let g = PolMat::from_fn(field, g.rows(), 1, |r, _| g.get(r, 0).scale(scale));

    let t = Shift(
        s2.values()
            .iter()
            .zip(&delta2)
            .map(|(&x, &y)| x + y as i64)
            .collect(),
    );
    let sub3 = ModularSystem::new(vec![new_m], g, t)?;
    let (_, delta3) = one(&sub3, alpha, depth + 1, stats)?;

    let mut delta = vec![0usize; n];
    for (&r, &x) in block1.iter().zip(&delta1) {
        delta[r] = x;
    }
    for (idx, &r) in block2.iter().enumerate() {
        delta[r] = delta2[idx] + delta3[idx];
    }
    let p = known_degree_solution_basis(&sys.with_shift(s)?, &delta)?;
    Ok((p, delta))
}

/// `P·F mod M`, computed through the column partial linearization of `P` so
/// that intermediate products stay near the average column degree.
pub fn residual_product(p: &PolMat, f: &PolMat, moduli: &[Poly]) -> Result<PolMat> {
    let n = p.cols();
    if f.rows() != n || f.cols() != moduli.len() || p.modulus() != f.modulus() {
        return Err(Error::dim("residual product shapes do not match"));
    }
    if moduli.iter().any(Poly::is_zero) {
        return Err(Error::DivisionByZero);
    }
    let field = p.modulus();
    let cdeg = p.column_degrees();
    let delta_bar = cdeg.iter().sum::<usize>().div_ceil(n.max(1)).max(1);

    // P = P̃·E with E stacking X^(kδ̄) multiples; E·F mod M row by row
    let mut p_tilde_cols: Vec<Vec<Poly>> = Vec::new();
    let mut ef_rows: Vec<Vec<Poly>> = Vec::new();
    let step = Poly::monomial(field, 1, delta_bar);
    for j in 0..n {
        let chunks = cdeg[j] / delta_bar + 1;
        let mut row: Vec<Poly> = (0..f.cols()).map(|c| f.get(j, c).rem(&moduli[c])).collect();
        for k in 0..chunks {
            let lo = k * delta_bar;
            let hi = if k + 1 == chunks {
                usize::MAX
            } else {
                lo + delta_bar
            };
            p_tilde_cols.push(
                (0..p.rows())
                    .map(|i| {
                        let e = p.get(i, j);
                        let c = e.coeffs();
                        let hi = hi.min(c.len());
                        if lo >= hi {
                            Poly::zero(field)
                        } else {
                            Poly::from_coeffs(field, c[lo..hi].to_vec())
                        }
                    })
                    .collect(),
            );
            ef_rows.push(row.clone());
            if k + 1 < chunks {
                row = row
                    .iter()
                    .zip(moduli)
                    .map(|(e, m)| (e * &step).rem(m))
                    .collect();
            }
        }
    }
    let nt = p_tilde_cols.len();
    let p_tilde = PolMat::from_fn(field, p.rows(), nt, |i, c| p_tilde_cols[c][i].clone());
    let ef = PolMat::from_rows(field, ef_rows)?;
    if f.cols() == 0 {
        return Ok(PolMat::zeros(field, p.rows(), 0));
    }
    p_tilde.mul(&ef).col_mod(moduli)
}

/// The s-Popov solution basis of the system, with its pivot degrees.
pub fn solution_basis(sys: &ModularSystem) -> Result<(PolMat, MinimalDegree)> {
    let keep: Vec<usize> = (0..sys.moduli.len())
        .filter(|&j| sys.moduli[j].deg_bar() > 0)
        .collect();
    if keep.len() < sys.moduli.len() {
        let reduced = ModularSystem::new(
            keep.iter().map(|&j| sys.moduli[j].clone()).collect(),
            sys.equations.select_cols(&keep),
            sys.shift.clone(),
        )?;
        return solution_basis(&reduced);
    }
    let n = sys.unknowns();
    let k = sys.moduli.len();
    match k {
        0 => Ok((PolMat::identity(sys.modulus(), n), vec![0; n])),
        1 => {
            let sigma = sys.sigma();
            solution_basis_one(&sys.moduli[0], &sys.equations, &sys.shift, 2 * sigma)
        }
        _ => {
            let h = k / 2;
            let first: Vec<usize> = (0..h).collect();
            let second: Vec<usize> = (h..k).collect();
            let sys1 = ModularSystem::new(
                sys.moduli[..h].to_vec(),
                sys.equations.select_cols(&first),
                sys.shift.clone(),
            )?;
            let (p1, delta1) = solution_basis(&sys1)?;
            let m2 = sys.moduli[h..].to_vec();
            let r = residual_product(&p1, &sys.equations.select_cols(&second), &m2)?;
            let t = Shift(
                sys.shift
                    .values()
                    .iter()
                    .zip(&delta1)
                    .map(|(&x, &d)| x + d as i64)
                    .collect(),
            );
            let (_, delta2) = solution_basis(&ModularSystem::new(m2, r, t)?)?;
            let delta: Vec<usize> = delta1.iter().zip(&delta2).map(|(a, b)| a + b).collect();
            let p = known_degree_solution_basis(sys, &delta)?;
            Ok((p, delta))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::naive_solution_basis;
    use crate::random;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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

    fn x2_system(s: &[i64]) -> ModularSystem {
        let f7 = fp(7);
        ModularSystem::new(
            vec![Poly::monomial(f7, 1, 2)],
            mat(7, &[&[&[1]], &[&[1]]]),
            sh(s),
        )
        .unwrap()
    }

    fn expected_x2_basis() -> PolMat {
        mat(7, &[&[&[0, 0, 1], &[]], &[&[-1], &[1]]])
    }

    #[test]
    fn expansion_examples() {
        let f = fp(5);
        let e = expand_min_degree(f, &[0, 0, 0], 6).unwrap();
        assert_eq!(e.alpha, vec![1, 1, 1]);
        assert_eq!(e.delta_tilde, vec![0, 0, 0]);
        assert_eq!(e.e, PolMat::identity(f, 3));

        let e = expand_min_degree(f, &[3, 1], 4).unwrap();
        assert_eq!(e.delta_bar, 2);
        assert_eq!(e.alpha, vec![2, 1]);
        assert_eq!(e.delta_tilde, vec![2, 1, 1]);
        assert_eq!(
            e.e,
            mat(5, &[&[&[1], &[]], &[&[0, 0, 1], &[]], &[&[], &[1]]])
        );

        assert!(expand_min_degree(f, &[3, 2], 4).is_err());
    }

    #[test]
    fn expansion_stays_within_twice_the_size() {
        let f = fp(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.gen_range(1..=8);
            let sigma = rng.gen_range(0..=40);
            let mut delta = vec![0usize; n];
            let mut budget = rng.gen_range(0..=sigma);
            while budget > 0 {
                delta[rng.gen_range(0..n)] += 1;
                budget -= 1;
            }
            let e = expand_min_degree(f, &delta, sigma).unwrap();
            assert!(e.delta_tilde.len() <= 2 * n);
            for (i, &d) in delta.iter().enumerate() {
                let start: usize = e.alpha[..i].iter().sum();
                let sum: usize = e.delta_tilde[start..start + e.alpha[i]].iter().sum();
                assert_eq!(sum, d);
            }
        }
    }

    #[test]
    fn known_degree_examples() {
        let sys = x2_system(&[0, 0]);
        assert_eq!(
            known_degree_solution_basis(&sys, &[2, 0]).unwrap(),
            expected_x2_basis()
        );
        assert!(matches!(
            known_degree_solution_basis(&sys, &[1, 1]),
            Err(Error::InconsistentMinimalDegree(_))
        ));
        let f7 = fp(7);
        let zero = ModularSystem::new(
            vec![Poly::from_i64s(f7, &[1, 2, 3])],
            PolMat::zeros(f7, 3, 1),
            sh(&[0, 4, 1]),
        )
        .unwrap();
        assert_eq!(
            known_degree_solution_basis(&zero, &[0, 0, 0]).unwrap(),
            PolMat::identity(f7, 3)
        );
    }

    #[test]
    fn partition_examples() {
        assert_eq!(
            partition_shift(&sh(&[0, 1, 5, 6]), 4),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert_eq!(partition_shift(&sh(&[3, 3, 3]), 2), vec![vec![0, 1, 2]]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(1..10);
            let s = random::shift(&mut rng, n, -20, 40);
            let alpha = rng.gen_range(1..10);
            let b = partition_shift(&s, alpha);
            assert_eq!(b.len() as i64, 1 + s.amplitude() / alpha as i64);
            let mut seen: Vec<usize> = b.iter().flatten().copied().collect();
            seen.sort_unstable();
            assert_eq!(seen, (0..n).collect::<Vec<_>>());
            for (k, bucket) in b.iter().enumerate() {
                for &i in bucket {
                    let off = s.values()[i] - s.min();
                    assert_eq!(off / alpha as i64, k as i64);
                }
            }
        }
    }

    #[test]
    fn splitting_index_examples() {
        assert_eq!(
            largest_splitting_index(&[1, 0, 1], &sh(&[0, 0, 10])),
            Some(2)
        );
        assert_eq!(largest_splitting_index(&[1, 1], &sh(&[0, 0])), None);
        assert_eq!(
            largest_splitting_index(&[0, 0, 0], &sh(&[0, 1, 1])),
            Some(1)
        );
        assert_eq!(
            largest_splitting_index(&[0, 0, 0], &sh(&[4, 1, 1])),
            Some(2)
        );
    }

    #[test]
    fn single_equation_examples() {
        let sys = x2_system(&[0, 0]);
        let m = &sys.moduli()[0];
        let (p, d) = solution_basis_one(m, sys.equations(), &sh(&[0, 0]), 4).unwrap();
        assert_eq!((p, d), (expected_x2_basis(), vec![2, 0]));
        let (p, d) = solution_basis_one(m, sys.equations(), &sh(&[0, 20]), 4).unwrap();
        assert_eq!((p, d), (expected_x2_basis(), vec![2, 0]));

        let f7 = fp(7);
        let modulus = Poly::from_i64s(f7, &[1, 2, 0, 3]);
        let eq = mat(7, &[&[&[2, 1]]]);
        let (p, d) = solution_basis_one(&modulus, &eq, &sh(&[9]), 6).unwrap();
        assert_eq!(
            p,
            PolMat::from_rows(f7, vec![vec![modulus.monic()]]).unwrap()
        );
        assert_eq!(d, vec![3]);
        assert!(solution_basis_one(&modulus, &eq, &sh(&[0]), 5).is_err());
    }

    #[test]
    fn gap_clamping() {
        assert_eq!(clamp_shift_gaps(&sh(&[0, 20, 3]), 4), sh(&[0, 7, 3]));
        assert_eq!(clamp_shift_gaps(&sh(&[5, 5, -9]), 2), sh(&[-7, -7, -9]));
    }

    #[test]
    fn recursive_path_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut branches = 0;
        for round in 0..40 {
            let f = fp([2, 3, 97, 65521][round % 4]);
            let sigma = rng.gen_range(1..=4);
            let m = random::modulus(&mut rng, f, random::ModulusFamily::ALL[round % 5], sigma);
            let sigma = m.degree().unwrap() as i64;
            let n = rng.gen_range(7..=10);
            // gaps within [1, σ] keep the shift unchanged by clamping
            let mut v = vec![0i64];
            for _ in 1..n {
                v.push(v.last().unwrap() + rng.gen_range(1..=sigma));
            }
            let s = Shift(v);
            let eq = random::equations(&mut rng, n, std::slice::from_ref(&m));
            let (p, d, stats) =
                solution_basis_one_instrumented(&m, &eq, &s, 2 * sigma as usize).unwrap();
            let oracle = naive_solution_basis(std::slice::from_ref(&m), &eq, &s).unwrap();
            assert_eq!(p, oracle, "round {round}");
            assert_eq!(d, p.diagonal_degrees());
            if s.amplitude() > 4 * sigma {
                assert!(stats.splitting_branches >= 1);
                assert!(stats.exact_divisions >= 1);
            }
            let bound = (1.0 + s.amplitude() as f64 / (2 * sigma) as f64)
                .log2()
                .ceil() as usize
                + 1;
            assert!(
                stats.max_depth <= bound,
                "depth {} > {bound}",
                stats.max_depth
            );
            branches += stats.splitting_branches;
        }
        assert!(branches > 0);
    }

    #[test]
    fn residual_product_examples() {
        let f7 = fp(7);
        let x2 = Poly::monomial(f7, 1, 2);
        let f = mat(7, &[&[&[1]], &[&[0, 1]]]);
        assert_eq!(
            residual_product(&PolMat::identity(f7, 2), &f, std::slice::from_ref(&x2)).unwrap(),
            f
        );
        let p = mat(7, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        assert_eq!(
            residual_product(&p, &f, &[x2]).unwrap(),
            mat(7, &[&[&[0, 1]], &[&[0, 1]]])
        );
        assert_eq!(
            residual_product(&p, &f, &[Poly::zero(f7)]),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn residual_product_agrees_with_direct_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for round in 0..500 {
            let f = fp([2, 3, 97, 65521][round % 4]);
            let n = rng.gen_range(1..=4);
            let k = rng.gen_range(1..=3);
            let moduli: Vec<Poly> = (0..k)
                .map(|_| random::modulus(&mut rng, f, random::ModulusFamily::Mixed, 6))
                .collect();
            let eq = random::equations(&mut rng, n, &moduli);
            let rows = rng.gen_range(1..=4);
            let deg = rng.gen_range(0..8);
            let p = random::matrix(&mut rng, f, rows, n, deg, 0.3);
            let direct = p.mul(&eq).col_mod(&moduli).unwrap();
            assert_eq!(residual_product(&p, &eq, &moduli).unwrap(), direct);
        }
    }

    #[test]
    fn solution_basis_examples() {
        let (p, d) = solution_basis(&x2_system(&[0, 0])).unwrap();
        assert_eq!((p, d), (expected_x2_basis(), vec![2, 0]));

        let f7 = fp(7);
        let x = Poly::x(f7);
        let sys = ModularSystem::new(
            vec![x.clone(), x],
            mat(7, &[&[&[1], &[1]], &[&[1], &[1]]]),
            sh(&[0, 0]),
        )
        .unwrap();
        let (p, d) = solution_basis(&sys).unwrap();
        assert_eq!(p, mat(7, &[&[&[0, 1], &[]], &[&[-1], &[1]]]));
        assert_eq!(d, vec![1, 0]);

        let zero = ModularSystem::reduced(
            vec![Poly::monomial(f7, 1, 3), Poly::from_i64s(f7, &[1, 1])],
            &mat(7, &[&[&[0, 0, 0, 2], &[1, 1]]]),
            sh(&[3]),
        )
        .unwrap();
        assert_eq!(
            solution_basis(&zero).unwrap(),
            (PolMat::identity(f7, 1), vec![0])
        );

        let empty = ModularSystem::new(vec![], PolMat::zeros(f7, 2, 0), sh(&[0, 0])).unwrap();
        assert_eq!(solution_basis(&empty).unwrap().0, PolMat::identity(f7, 2));
    }

    #[test]
    fn rejects_degree_violations() {
        let f7 = fp(7);
        let r = ModularSystem::new(
            vec![Poly::monomial(f7, 1, 2)],
            mat(7, &[&[&[0, 0, 1]]]),
            sh(&[0]),
        );
        assert!(matches!(r, Err(Error::Precondition(_))));
        let r = ModularSystem::new(vec![Poly::zero(f7)], mat(7, &[&[&[]]]), sh(&[0]));
        assert_eq!(r, Err(Error::DivisionByZero));
    }

    #[test]
    fn solution_basis_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for round in 0..120 {
            let f = fp([2, 3, 97, 65521][round % 4]);
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=4);
            let moduli: Vec<Poly> = (0..k)
                .map(|_| {
                    let fam = random::ModulusFamily::ALL[rng.gen_range(0..5)];
                    random::modulus(&mut rng, f, fam, 5)
                })
                .collect();
            let eq = random::equations(&mut rng, n, &moduli);
            let amp = rng.gen_range(0..30);
            let s = random::shift(&mut rng, n, -10, amp);
            let sys = ModularSystem::new(moduli.clone(), eq.clone(), s.clone()).unwrap();
            let (p, d) = solution_basis(&sys).unwrap();
            assert_eq!(
                p,
                naive_solution_basis(&moduli, &eq, &s).unwrap(),
                "round {round}"
            );
            assert!(d.iter().sum::<usize>() <= sys.sigma());
            assert_eq!(known_degree_solution_basis(&sys, &d).unwrap(), p);
        }
    }
}
