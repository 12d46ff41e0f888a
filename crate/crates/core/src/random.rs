//! Random instances for tests and benchmarks. Every generator takes the
//! caller's RNG so that seeded runs are reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::PrimeModulus;
use crate::matrix::FieldMatrix;
use crate::polmat::{PolMat, Shift};
use crate::poly::Poly;

/// Uniform polynomial of degree at most `deg`.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, f: PrimeModulus, deg: usize) -> Poly {
    let p = f.value();
    Poly::from_coeffs(f, (0..=deg).map(|_| rng.gen_range(0..p)).collect())
}

/// Uniform monic polynomial of degree exactly `deg`.
pub fn monic_poly<R: Rng + ?Sized>(rng: &mut R, f: PrimeModulus, deg: usize) -> Poly {
    let p = f.value();
    let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    c.push(1);
    Poly::from_coeffs(f, c)
}

/// Entries of degree at most `deg`, with each entry zero with probability
/// `zero_prob`.
pub fn matrix<R: Rng + ?Sized>(
    rng: &mut R,
    f: PrimeModulus,
    rows: usize,
    cols: usize,
    deg: usize,
    zero_prob: f64,
) -> PolMat {
    PolMat::from_fn(f, rows, cols, |_, _| {
        if rng.gen_bool(zero_prob) {
            Poly::zero(f)
        } else {
            poly(rng, f, deg)
        }
    })
}

/// Entry (i, j) has degree at most `row_deg[i] + col_deg[j]`.
pub fn matrix_with_degrees<R: Rng + ?Sized>(
    rng: &mut R,
    f: PrimeModulus,
    row_deg: &[usize],
    col_deg: &[usize],
) -> PolMat {
    PolMat::from_fn(f, row_deg.len(), col_deg.len(), |i, j| {
        poly(rng, f, row_deg[i] + col_deg[j])
    })
}

/// Whether a square matrix is nonsingular. Evaluation at points is tried
/// first; the exact determinant settles the remaining cases.
pub fn is_nonsingular(a: &PolMat) -> bool {
    let f = a.modulus();
    let m = a.rows();
    let points = f.value().min(8);
    for x in 0..points {
        let mut c = FieldMatrix::zeros(f, m, m);
        for i in 0..m {
            for j in 0..m {
                c.set(i, j, a.get(i, j).eval(x));
            }
        }
        if c.rank() == m {
            return true;
        }
    }
    !a.determinant().expect("square").is_zero()
}

/// Nonsingular matrix with entries of degree at most `deg`, by rejection.
pub fn nonsingular<R: Rng + ?Sized>(
    rng: &mut R,
    f: PrimeModulus,
    m: usize,
    deg: usize,
    zero_prob: f64,
) -> PolMat {
    loop {
        let a = matrix(rng, f, m, m, deg, zero_prob);
        if is_nonsingular(&a) {
            return a;
        }
    }
}

/// Nonsingular matrix whose row and column degrees are drawn independently
/// from `[0, max_deg]`, giving unbalanced degree profiles.
pub fn unbalanced_nonsingular<R: Rng + ?Sized>(
    rng: &mut R,
    f: PrimeModulus,
    m: usize,
    max_deg: usize,
) -> PolMat {
    loop {
        let rd: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=max_deg)).collect();
        let cd: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=max_deg)).collect();
        let mut a = matrix_with_degrees(rng, f, &rd, &cd);
        // sparsify a little so that not every entry reaches its bound
        for i in 0..m {
            for j in 0..m {
                if rng.gen_bool(0.2) {
                    let d = rng.gen_range(0..=rd[i] + cd[j]);
                    a.set(i, j, poly(rng, f, d));
                }
            }
        }
        if is_nonsingular(&a) {
            return a;
        }
    }
}

/// Product of `ops` random elementary row operations (transvections by
/// `c·X^e` with `e <= max_deg`, swaps and nonzero scalings).
pub fn unimodular<R: Rng + ?Sized>(
    rng: &mut R,
    f: PrimeModulus,
    m: usize,
    ops: usize,
    max_deg: usize,
) -> PolMat {
    let mut u = PolMat::identity(f, m);
    if m == 0 {
        return u;
    }
    let p = f.value();
    for _ in 0..ops {
        match rng.gen_range(0..6) {
            0 if m > 1 => {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(0..m);
                u.swap_rows(a, b);
            }
            1 => {
                let i = rng.gen_range(0..m);
                u.scale_row(i, rng.gen_range(1..p));
            }
            _ if m > 1 => {
                let i = rng.gen_range(0..m);
                let mut j = rng.gen_range(0..m - 1);
                if j >= i {
                    j += 1;
                }
                let c = rng.gen_range(1..p);
                let e = rng.gen_range(0..=max_deg);
                u.row_sub_scaled(i, j, c, e);
            }
            _ => {}
        }
    }
    u
}

/// Random integer shift with entries in `[base, base + amp]`.
pub fn shift<R: Rng + ?Sized>(rng: &mut R, n: usize, base: i64, amp: i64) -> Shift {
    Shift((0..n).map(|_| base + rng.gen_range(0..=amp)).collect())
}

/// Families of moduli for random modular systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusFamily {
    /// `X^e`.
    Monomial,
    /// Monic irreducible of degree at most 6.
    Irreducible,
    /// `(X - a)^e`.
    PowerOfLinear,
    /// Product of distinct linear factors.
    SplitDistinct,
    /// Product of two moduli from the other families.
    Mixed,
}

impl ModulusFamily {
    pub const ALL: [ModulusFamily; 5] = [
        ModulusFamily::Monomial,
        ModulusFamily::Irreducible,
        ModulusFamily::PowerOfLinear,
        ModulusFamily::SplitDistinct,
        ModulusFamily::Mixed,
    ];
}

/// Monic modulus of degree in `[1, max_deg]` (distinct-root products are
/// capped at p roots).
pub fn modulus<R: Rng + ?Sized>(
    rng: &mut R,
    f: PrimeModulus,
    family: ModulusFamily,
    max_deg: usize,
) -> Poly {
    let max_deg = max_deg.max(1);
    let p = f.value();
    match family {
        ModulusFamily::Monomial => Poly::monomial(f, 1, rng.gen_range(1..=max_deg)),
        ModulusFamily::Irreducible => {
            let d = rng.gen_range(1..=max_deg.min(6));
            loop {
                let c = monic_poly(rng, f, d);
                if is_irreducible(&c) {
                    return c;
                }
            }
        }
        ModulusFamily::PowerOfLinear => {
            let e = rng.gen_range(1..=max_deg);
            let lin = Poly::from_coeffs(f, vec![f.neg(rng.gen_range(0..p)), 1]);
            (0..e).fold(Poly::one(f), |acc, _| &acc * &lin)
        }
        ModulusFamily::SplitDistinct => {
            let cap = max_deg.min(p.min(64) as usize);
            let e = rng.gen_range(1..=cap);
            let mut roots: Vec<u64> = (0..p.min(4096)).collect();
            roots.shuffle(rng);
            roots[..e].iter().fold(Poly::one(f), |acc, &r| {
                &acc * &Poly::from_coeffs(f, vec![f.neg(r), 1])
            })
        }
        ModulusFamily::Mixed => {
            let budget = max_deg.max(2);
            let d1 = rng.gen_range(1..budget);
            let pick = |rng: &mut R| {
                [
                    ModulusFamily::Monomial,
                    ModulusFamily::Irreducible,
                    ModulusFamily::PowerOfLinear,
                    ModulusFamily::SplitDistinct,
                ][rng.gen_range(0..4)]
            };
            let fa = pick(rng);
            let fb = pick(rng);
            let a = modulus(rng, f, fa, d1);
            let b = modulus(rng, f, fb, budget - a.degree().unwrap());
            &a * &b
        }
    }
}

/// Rabin-style irreducibility test for small degrees.
pub fn is_irreducible(c: &Poly) -> bool {
    let Some(d) = c.degree() else { return false };
    if d == 0 {
        return false;
    }
    let f = c.modulus();
    let x = Poly::x(f);
    let mut xp = x.clone();
    for _ in 1..=d / 2 {
        xp = pow_mod(&xp, f.value(), c);
        let g = Poly::gcd(&(&xp - &x), c);
        if !g.is_one() {
            return false;
        }
    }
    true
}

fn pow_mod(b: &Poly, mut e: u64, m: &Poly) -> Poly {
    let f = b.modulus();
    let mut r = Poly::one(f).rem(m);
    let mut b = b.rem(m);
    while e > 0 {
        if e & 1 == 1 {
            r = (&r * &b).rem(m);
        }
        b = (&b * &b).rem(m);
        e >>= 1;
    }
    r
}

/// Equations matrix with column j of degree below `deg(moduli[j])`.
pub fn equations<R: Rng + ?Sized>(rng: &mut R, n: usize, moduli: &[Poly]) -> PolMat {
    let f = moduli
        .first()
        .map(Poly::modulus)
        .expect("at least one modulus");
    PolMat::from_fn(f, n, moduli.len(), |_, j| {
        let d = moduli[j].degree().expect("nonzero modulus");
        if d == 0 {
            Poly::zero(f)
        } else {
            poly(rng, f, d - 1)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn irreducibility() {
        let f = PrimeModulus::new(2).unwrap();
        assert!(is_irreducible(&Poly::from_i64s(f, &[1, 1, 1])));
        assert!(!is_irreducible(&Poly::from_i64s(f, &[1, 0, 1])));
        assert!(is_irreducible(&Poly::from_i64s(f, &[1, 1, 0, 1])));
        let f = PrimeModulus::new(7).unwrap();
        assert!(is_irreducible(&Poly::from_i64s(f, &[1, 0, 1])));
        assert!(!is_irreducible(&Poly::from_i64s(f, &[-1, 0, 1])));
    }

    #[test]
    fn generated_objects_have_requested_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 97, 65521] {
            let f = PrimeModulus::new(p).unwrap();
            for family in ModulusFamily::ALL {
                let m = modulus(&mut rng, f, family, 6);
                assert!(m.is_monic() && m.degree().unwrap() >= 1, "{family:?}");
                assert!(m.degree().unwrap() <= 12);
            }
            let a = nonsingular(&mut rng, f, 3, 2, 0.2);
            assert!(!a.determinant().unwrap().is_zero());
            let u = unimodular(&mut rng, f, 4, 20, 2);
            assert_eq!(u.determinant().unwrap().degree(), Some(0));
        }
    }
}
