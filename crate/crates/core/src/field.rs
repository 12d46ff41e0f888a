//! Arithmetic in the prime field Z/pZ for word-sized primes.

use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 62;

/// A prime p with 2 <= p < 2^62, validated at construction.
///
/// Field elements are plain `u64` values in `[0, p)`; every method here
/// expects canonical inputs and returns canonical outputs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
    // products of two canonical elements fit in a u64
    small: bool,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus {
            p,
            small: p < (1 << 32),
        })
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.p
    }

    /// Canonical representative of an arbitrary signed integer.
    pub fn reduce_i128(self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        if self.small {
            (a * b) % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    /// `a - c*b`, the elimination kernel.
    #[inline]
    pub fn sub_mul(self, a: u64, c: u64, b: u64) -> u64 {
        self.sub(a, self.mul(c, b))
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in Z/{}Z", self.p);
        self.pow(a, self.p - 2)
    }

    /// Whether products of canonical elements can be accumulated in a u128
    /// without intermediate reduction for up to 2^64 terms.
    #[inline]
    pub(crate) fn is_small(self) -> bool {
        self.small
    }
}

impl fmt::Debug for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}Z", self.p)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        assert!(is_prime(65521));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn rejects_composites_and_range() {
        assert_eq!(PrimeModulus::new(1), Err(Error::InvalidModulus(1)));
        assert_eq!(PrimeModulus::new(91), Err(Error::InvalidModulus(91)));
        assert!(PrimeModulus::new(MAX_MODULUS + 1).is_err());
        assert!(PrimeModulus::new(2).is_ok());
    }

    #[test]
    fn arithmetic_large_prime() {
        let f = PrimeModulus::new((1 << 61) - 1).unwrap();
        let a = (1 << 60) + 12345;
        let b = f.inv(a);
        assert_eq!(f.mul(a, b), 1);
        assert_eq!(f.add(f.neg(a), a), 0);
        assert_eq!(f.sub(3, 5), f.value() - 2);
    }

    #[test]
    fn inverse_small_field() {
        let f = PrimeModulus::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce_i128(-1), 6);
    }
}
