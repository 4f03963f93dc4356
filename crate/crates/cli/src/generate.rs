//! Seeded random instances. The same `(n, max_entry, seed)` always yields the
//! same instance: ChaCha8 seeded from the u64 seed, entries drawn row by row,
//! resampling the whole basis until it is nonsingular.

use num_bigint::BigInt;
use num_traits::Zero;
use onecall_core::{det_bareiss, BigMat, BigVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::Instance;
use crate::CliError;

pub fn random_basis<R: Rng>(rng: &mut R, n: usize, max_entry: i64) -> BigMat {
    loop {
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|_| (0..n).map(|_| BigInt::from(rng.random_range(-max_entry..=max_entry))).collect())
            .collect();
        let b = BigMat::from_rows(rows).expect("rows are square");
        if !det_bareiss(&b).is_zero() {
            return b;
        }
    }
}

pub fn random_target<R: Rng>(rng: &mut R, n: usize, bound: i64) -> BigVec {
    BigVec((0..n).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect())
}

/// A nonsingular n×n basis with entries in [−max_entry, max_entry], plus a
/// target with entries in [−b, b] when `target_bound` is `Some(b)`.
pub fn generate(n: usize, max_entry: i64, seed: u64, target_bound: Option<i64>) -> Result<Instance, CliError> {
    if n == 0 || max_entry < 1 {
        return Err(CliError::BadInput("need n >= 1 and max-entry >= 1".into()));
    }
    if target_bound.is_some_and(|b| b < 0) {
        return Err(CliError::BadInput("target bound must be non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_basis(&mut rng, n, max_entry);
    let t = target_bound.map(|bound| random_target(&mut rng, n, bound));
    Ok(Instance::new(&b, t.as_ref(), Some(seed)))
}
