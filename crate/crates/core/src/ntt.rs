//! Matrix products of polynomial matrices by evaluation: each entry is
//! transformed once modulo a few NTT-friendly primes, products are taken
//! pointwise, and coefficients are lifted back by CRT.

use crate::field::PrimeModulus;

// (prime, generator of the multiplicative group); each has 2^23 | q-1
const PRIMES: [(u64, u64); 3] = [(998_244_353, 3), (167_772_161, 3), (469_762_049, 3)];
const MAX_LOG_LEN: u32 = 23;

fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % q;
        }
        a = a * a % q;
        e >>= 1;
    }
    r
}

/// Powers of the principal roots for every butterfly level of a transform
/// of length `n`: entry `h + i` is `w_{2h}^i`, next to its Shoup companion
/// `⌊w·2^64/Q⌋`.
struct Twiddles<const Q: u64> {
    w: Vec<u64>,
    shoup: Vec<u64>,
    inv_n: u64,
}

impl<const Q: u64> Twiddles<Q> {
    fn new(n: usize, g: u64, inverse: bool) -> Self {
        let mut w = vec![0u64; n.max(2)];
        let mut h = 1;
        while h < n {
            let mut root = pow_mod(g, (Q - 1) / (2 * h) as u64, Q);
            if inverse {
                root = pow_mod(root, Q - 2, Q);
            }
            let mut x = 1;
            for i in 0..h {
                w[h + i] = x;
                x = x * root % Q;
            }
            h *= 2;
        }
        let shoup = w
            .iter()
            .map(|&x| (((x as u128) << 64) / Q as u128) as u64)
            .collect();
        Twiddles {
            w,
            shoup,
            inv_n: pow_mod(n as u64 % Q, Q - 2, Q),
        }
    }
}

/// `x·w mod Q` for `x < 2^63`, given `ws = ⌊w·2^64/Q⌋`.
#[inline(always)]
fn mul_shoup<const Q: u64>(x: u64, w: u64, ws: u64) -> u64 {
    let hi = ((x as u128 * ws as u128) >> 64) as u64;
    let r = x.wrapping_mul(w).wrapping_sub(hi.wrapping_mul(Q));
    if r >= Q {
        r - Q
    } else {
        r
    }
}

/// In-place cyclic transform of length `a.len()` (a power of two matching
/// the twiddle table).
fn transform<const Q: u64>(a: &mut [u64], tw: &Twiddles<Q>, inverse: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut half = 1;
    while half < n {
        let w = &tw.w[half..2 * half];
        let ws = &tw.shoup[half..2 * half];
        for chunk in a.chunks_mut(2 * half) {
            let (lo, hi) = chunk.split_at_mut(half);
            for (((u, v), &t), &ts) in lo.iter_mut().zip(hi.iter_mut()).zip(w).zip(ws) {
                let x = *u;
                let y = mul_shoup::<Q>(*v, t, ts);
                *u = if x + y >= Q { x + y - Q } else { x + y };
                *v = if x >= y { x - y } else { x + Q - y };
            }
        }
        half *= 2;
    }
    if inverse {
        for x in a.iter_mut() {
            *x = *x * tw.inv_n % Q;
        }
    }
}

/// Number of primes whose product exceeds every coefficient of an exact
/// integer product with `inner` terms of length `short` over Z/pZ, or
/// `None` if three do not suffice.
fn primes_needed(p: u64, inner: usize, short: usize) -> Option<usize> {
    let bound = ((p - 1) as u128)
        .checked_mul((p - 1) as u128)?
        .checked_mul((inner * short) as u128)?;
    let mut prod: u128 = 1;
    for (k, &(q, _)) in PRIMES.iter().enumerate() {
        prod *= q as u128;
        if prod > bound {
            return Some(k + 1);
        }
    }
    None
}

struct Shape {
    n: usize,
    inner: usize,
    k: usize,
    size: usize,
    out_len: usize,
}

/// The product modulo one transform prime.
fn mat_mul_mod<const Q: u64, const G: u64>(
    a: &[Vec<u64>],
    b: &[Vec<u64>],
    sh: &Shape,
) -> Vec<Vec<u64>> {
    let fwd = Twiddles::<Q>::new(sh.size, G, false);
    let inv = Twiddles::<Q>::new(sh.size, G, true);
    let lift = |src: &[Vec<u64>]| -> Vec<Option<Vec<u64>>> {
        src.iter()
            .map(|v| {
                if v.is_empty() {
                    return None;
                }
                let mut t: Vec<u64> = v.iter().map(|&c| c % Q).collect();
                t.resize(sh.size, 0);
                transform(&mut t, &fwd, false);
                Some(t)
            })
            .collect()
    };
    let ta = lift(a);
    let tb = lift(b);
    let mut res = Vec::with_capacity(sh.n * sh.k);
    for i in 0..sh.n {
        for j in 0..sh.k {
            let mut acc = vec![0u64; sh.size];
            let mut any = false;
            for l in 0..sh.inner {
                let (Some(x), Some(y)) = (&ta[i * sh.inner + l], &tb[l * sh.k + j]) else {
                    continue;
                };
                any = true;
                for ((s, &u), &v) in acc.iter_mut().zip(x).zip(y) {
                    let t = *s + u * v % Q;
                    *s = if t >= Q { t - Q } else { t };
                }
            }
            if any {
                transform(&mut acc, &inv, true);
                acc.truncate(sh.out_len);
            } else {
                acc.clear();
            }
            res.push(acc);
        }
    }
    res
}

/// `C = A·B` for row-major matrices of coefficient vectors, or `None` when
/// the sizes fall outside what the prime set can represent.
pub(crate) fn mat_mul(
    f: PrimeModulus,
    a: &[Vec<u64>],
    b: &[Vec<u64>],
    n: usize,
    inner: usize,
    k: usize,
) -> Option<Vec<Vec<u64>>> {
    let la = a.iter().map(Vec::len).max().unwrap_or(0);
    let lb = b.iter().map(Vec::len).max().unwrap_or(0);
    if la == 0 || lb == 0 {
        return Some(vec![Vec::new(); n * k]);
    }
    let out_len = la + lb - 1;
    let size = out_len.next_power_of_two();
    if size.trailing_zeros() > MAX_LOG_LEN {
        return None;
    }
    let nprimes = primes_needed(f.value(), inner, la.min(lb))?;

    let mut residues: Vec<Vec<Vec<u64>>> = Vec::with_capacity(nprimes);
    let shape = Shape {
        n,
        inner,
        k,
        size,
        out_len,
    };
    residues.push(mat_mul_mod::<{ PRIMES[0].0 }, { PRIMES[0].1 }>(
        a, b, &shape,
    ));
    if nprimes > 1 {
        residues.push(mat_mul_mod::<{ PRIMES[1].0 }, { PRIMES[1].1 }>(
            a, b, &shape,
        ));
    }
    if nprimes > 2 {
        residues.push(mat_mul_mod::<{ PRIMES[2].0 }, { PRIMES[2].1 }>(
            a, b, &shape,
        ));
    }

    // Garner reconstruction, then reduction modulo p
    let p = f.value() as u128;
    let (q0, q1, q2) = (PRIMES[0].0, PRIMES[1].0, PRIMES[2].0);
    let inv01 = pow_mod(q0 % q1, q1 - 2, q1);
    let q01 = (q0 as u128 * q1 as u128 % q2 as u128) as u64;
    let inv012 = pow_mod(q01, q2 - 2, q2);
    let mut out = Vec::with_capacity(n * k);
    for e in 0..n * k {
        let len = residues[0][e].len();
        let mut v = Vec::with_capacity(len);
        for t in 0..len {
            let r0 = residues[0][e][t];
            let mut x = r0 as u128;
            if nprimes > 1 {
                let r1 = residues[1][e][t];
                let c1 = (r1 + q1 - r0 % q1) % q1 * inv01 % q1;
                x += q0 as u128 * c1 as u128;
                if nprimes > 2 {
                    let r2 = residues[2][e][t];
                    let x_mod = (x % q2 as u128) as u64;
                    let c2 = (r2 + q2 - x_mod) % q2 * inv012 % q2;
                    x += q0 as u128 * q1 as u128 * c2 as u128;
                }
            }
            v.push(if nprimes < 3 {
                (x as u64) % p as u64
            } else {
                (x % p) as u64
            });
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        out.push(v);
    }
    Some(out)
}
