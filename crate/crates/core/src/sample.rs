//! Seeded random systems for sweeps.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::system::PeriodicSystem;

pub const DEFAULT_SEED: u64 = 0x5eed_c0de;

/// Strict systems with period `1..=max_d` and coefficients in `1..=max_coeff`.
pub fn random_strict_systems(seed: u64, count: usize, max_d: usize, max_coeff: i64) -> Vec<PeriodicSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.random_range(1..=max_d);
            let a: Vec<i64> = (0..d).map(|_| rng.random_range(1..=max_coeff)).collect();
            let b: Vec<i64> = (0..d).map(|_| rng.random_range(1..=max_coeff)).collect();
            let b0 = rng.random_range(0..=max_coeff);
            PeriodicSystem::from_ints(&a, &b, b0, true).expect("positive coefficients")
        })
        .collect()
}

/// A seeded generator for callers that draw their own parameters.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_range() {
        let a = random_strict_systems(7, 50, 4, 9);
        let b = random_strict_systems(7, 50, 4, 9);
        assert_eq!(a, b);
        for s in &a {
            assert!((1..=4).contains(&s.period()));
            assert!(s.max_abs_coefficient() <= num_bigint::BigInt::from(9));
            assert!(s.is_strict());
        }
        assert_ne!(a, random_strict_systems(8, 50, 4, 9));
    }
}
