//! Seeded random sources for evaluation points and configurations.
//!
//! Every randomized check in the crate takes an explicit [`ChaCha8Rng`] so
//! results are reproducible given the master seed.

use crate::ratutil::int;
use crate::Rat;
use num::bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero random rational with numerator and denominator bounded by `bound`.
pub fn nonzero_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n == 0 {
            continue;
        }
        let d = rng.gen_range(1..=bound);
        return Rat::new(BigInt::from(n), BigInt::from(d));
    }
}

/// Random rational distinct from every entry of `avoid` (and from 0 when
/// `nonzero` is set).
pub fn rational_avoiding(rng: &mut ChaCha8Rng, bound: i64, avoid: &[Rat], nonzero: bool) -> Rat {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if nonzero && n == 0 {
            continue;
        }
        let d = rng.gen_range(1..=bound);
        let q = Rat::new(BigInt::from(n), BigInt::from(d));
        if avoid.iter().all(|a| *a != q) {
            return q;
        }
    }
}

/// Random small integer vector, entries in [-bound, bound].
pub fn int_vector(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<Rat> {
    (0..len).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}
