//! Dense univariate polynomials over a prime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::PrimeModulus;

/// Below this operand length multiplication is schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// A polynomial with coefficients stored low degree first.
///
/// The representation is normalized: the zero polynomial has no
/// coefficients and otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(modulus: PrimeModulus) -> Self {
        Poly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::constant(modulus, 1)
    }

    /// The variable X.
    pub fn x(modulus: PrimeModulus) -> Self {
        Self::monomial(modulus, 1, 1)
    }

    pub fn constant(modulus: PrimeModulus, c: u64) -> Self {
        Self::from_coeffs(modulus, vec![c])
    }

    /// `c * X^k`.
    pub fn monomial(modulus: PrimeModulus, c: u64, k: usize) -> Self {
        let c = modulus.reduce(c);
        if c == 0 {
            return Self::zero(modulus);
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { modulus, coeffs }
    }

    /// Builds a polynomial from arbitrary `u64` coefficients (reduced mod p).
    pub fn from_coeffs(modulus: PrimeModulus, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = modulus.reduce(*c);
        }
        trim(&mut coeffs);
        Poly { modulus, coeffs }
    }

    /// Builds a polynomial from signed coefficients.
    pub fn from_i64s(modulus: PrimeModulus, coeffs: &[i64]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&c| modulus.reduce_i128(c as i128))
            .collect();
        Self::from_coeffs(modulus, coeffs)
    }

    /// Takes ownership of coefficients already reduced mod p.
    pub(crate) fn from_canonical(modulus: PrimeModulus, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < modulus.value()));
        trim(&mut coeffs);
        Poly { modulus, coeffs }
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention that the zero polynomial has degree 0.
    #[inline]
    pub fn deg_bar(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.value(),
                right: other.modulus.value(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = self.modulus;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut c = long.clone();
        for (a, &b) in c.iter_mut().zip(short.iter()) {
            *a = f.add(*a, b);
        }
        Ok(Poly::from_canonical(f, c))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        out.sub_scaled_shifted(other, 1, 0);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(Poly::from_canonical(
            self.modulus,
            mul_slices(self.modulus, &self.coeffs, &other.coeffs),
        ))
    }

    /// Euclidean division: `self = q*b + r` with `deg r < deg b`.
    pub fn try_div_rem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check(b)?;
        let f = self.modulus;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(b.coeffs[db]);
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + db], inv_lc);
            q[k] = c;
            if c != 0 {
                for (i, &bi) in b.coeffs.iter().enumerate() {
                    r[k + i] = f.sub_mul(r[k + i], c, bi);
                }
            }
        }
        r.truncate(db);
        Ok((Poly::from_canonical(f, q), Poly::from_canonical(f, r)))
    }

    /// Quotient and remainder; panics when `b` is zero or moduli differ.
    pub fn div_rem(&self, b: &Poly) -> (Poly, Poly) {
        self.try_div_rem(b).expect("polynomial division")
    }

    pub fn rem(&self, b: &Poly) -> Poly {
        self.div_rem(b).1
    }

    /// Extended gcd: `(g, u, v)` with `g` monic and `g = u*a + v*b`.
    pub fn xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        a.check(b)?;
        let f = a.modulus;
        if a.is_zero() && b.is_zero() {
            return Err(Error::Precondition("gcd of two zero polynomials".into()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
        let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let u = &u0 - &(&q * &u1);
            u0 = std::mem::replace(&mut u1, u);
            let v = &v0 - &(&q * &v1);
            v0 = std::mem::replace(&mut v1, v);
        }
        let inv = f.inv(r0.leading_coeff().expect("nonzero gcd"));
        Ok((r0.scale(inv), u0.scale(inv), v0.scale(inv)))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        Self::xgcd(a, b).expect("gcd").0
    }

    /// Multiplies by a field constant.
    pub fn scale(&self, c: u64) -> Poly {
        let f = self.modulus;
        let c = f.reduce(c);
        if c == 0 {
            return Poly::zero(f);
        }
        Poly {
            modulus: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(self.modulus.inv(lc)),
        }
    }

    /// Multiplication by `X^k`.
    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Drops the `k` lowest coefficients, i.e. the quotient by `X^k`.
    pub fn shr(&self, k: usize) -> Poly {
        if k >= self.coeffs.len() {
            return Poly::zero(self.modulus);
        }
        Poly {
            modulus: self.modulus,
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Whether `X^k` divides the polynomial.
    pub fn low_part_is_zero(&self, k: usize) -> bool {
        self.coeffs.iter().take(k).all(|&c| c == 0)
    }

    /// Remainder modulo `X^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        if n >= self.coeffs.len() {
            return self.clone();
        }
        Poly::from_canonical(self.modulus, self.coeffs[..n].to_vec())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.modulus;
        let x = f.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// In place `self -= c * X^k * other`.
    pub fn sub_scaled_shifted(&mut self, other: &Poly, c: u64, k: usize) {
        debug_assert_eq!(self.modulus, other.modulus);
        let f = self.modulus;
        if c == 0 || other.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() + k {
            self.coeffs.resize(other.coeffs.len() + k, 0);
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            self.coeffs[i + k] = f.sub_mul(self.coeffs[i + k], c, b);
        }
        trim(&mut self.coeffs);
    }

    /// In place `self += other`.
    pub fn add_assign_poly(&mut self, other: &Poly) {
        debug_assert_eq!(self.modulus, other.modulus);
        let f = self.modulus;
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = f.add(*a, b);
        }
        trim(&mut self.coeffs);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}*X")?,
                (_, 1) => write!(f, "X^{i}")?,
                _ => write!(f, "{c}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.modulus;
        Poly {
            modulus: f,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

pub(crate) fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// Product of two coefficient slices (not necessarily normalized).
pub(crate) fn mul_slices(f: PrimeModulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    karatsuba(f, a, b, &mut out);
    out
}

/// Accumulates `a*b` into `out` (which has at least `a.len()+b.len()-1` slots).
fn karatsuba(f: PrimeModulus, a: &[u64], b: &[u64], out: &mut [u64]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
        schoolbook(f, a, b, out);
        return;
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let h = a.len().div_ceil(2);
    if b.len() <= h {
        // unbalanced: cut the long operand into pieces of the short length
        for (i, chunk) in a.chunks(b.len()).enumerate() {
            karatsuba(f, chunk, b, &mut out[i * b.len()..]);
        }
        return;
    }
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let mut z0 = vec![0; 2 * h - 1];
    karatsuba(f, a0, b0, &mut z0);
    let mut z2 = vec![0; a1.len() + b1.len() - 1];
    karatsuba(f, a1, b1, &mut z2);
    let sa: Vec<u64> = (0..h)
        .map(|i| f.add(a0[i], a1.get(i).copied().unwrap_or(0)))
        .collect();
    let sb: Vec<u64> = (0..h)
        .map(|i| f.add(b0[i], b1.get(i).copied().unwrap_or(0)))
        .collect();
    let mut z1 = vec![0; 2 * h - 1];
    karatsuba(f, &sa, &sb, &mut z1);
    for (i, &v) in z0.iter().enumerate() {
        z1[i] = f.sub(z1[i], v);
        out[i] = f.add(out[i], v);
    }
    for (i, &v) in z2.iter().enumerate() {
        z1[i] = f.sub(z1[i], v);
        out[i + 2 * h] = f.add(out[i + 2 * h], v);
    }
    for (i, &v) in z1.iter().enumerate() {
        out[i + h] = f.add(out[i + h], v);
    }
}

fn schoolbook(f: PrimeModulus, a: &[u64], b: &[u64], out: &mut [u64]) {
    let p = f.value();
    if f.is_small() {
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        for (o, s) in out.iter_mut().zip(acc) {
            *o = ((*o as u128 + s) % p as u128) as u64;
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
}
