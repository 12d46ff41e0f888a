//! Shared workload generators for the benchmarks. Every workload is
//! deterministic in its seed so runs compare like with like.

use popov_core::random;
use popov_core::{OrderSpec, PolMat, PrimeModulus, Shift};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PRIME: u64 = 65521;

pub fn field() -> PrimeModulus {
    PrimeModulus::new(PRIME).unwrap()
}

/// An approximation problem: `m×k` dense input of full degree, uniform
/// order `order` on each column, uniform shift.
pub struct OrderBasisWorkload {
    pub f: PolMat,
    pub tau: OrderSpec,
    pub shift: Shift,
}

pub fn order_basis_workload(m: usize, k: usize, order: usize, seed: u64) -> OrderBasisWorkload {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    OrderBasisWorkload {
        f: random::matrix(&mut rng, field(), m, k, order - 1, 0.0),
        tau: OrderSpec::uniform(k, order).unwrap(),
        shift: Shift::uniform(m),
    }
}

/// Dense nonsingular `m×m` matrix with entries of degree `deg`.
pub fn balanced_matrix(m: usize, deg: usize, seed: u64) -> PolMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random::nonsingular(&mut rng, field(), m, deg, 0.0)
}

/// Nonsingular matrix whose row and column degrees vary up to `max_deg`,
/// the case partial linearization targets.
pub fn unbalanced_matrix(m: usize, max_deg: usize, seed: u64) -> PolMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random::unbalanced_nonsingular(&mut rng, field(), m, max_deg)
}
