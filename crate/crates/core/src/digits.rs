//! Balanced base-p digits: N = Σ d_i p^i with |d_i| ≤ ⌊p/2⌋ for odd p > 2.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

fn check_modulus(p: &BigInt) -> Result<()> {
    if *p <= BigInt::from(2) || p.is_even() {
        return Err(Error::InvalidModulus(p.clone()));
    }
    Ok(())
}

/// Peels off `num_digits` balanced digits of `value`, least significant
/// first. Fails if anything is left over after the last digit.
pub fn balanced_decode(value: &BigInt, p: &BigInt, num_digits: usize) -> Result<Vec<BigInt>> {
    check_modulus(p)?;
    let half = p >> 1u32;
    let mut rest = value.clone();
    let mut digits = Vec::with_capacity(num_digits);
    for _ in 0..num_digits {
        if rest.is_zero() {
            digits.push(BigInt::zero());
            continue;
        }
        let (mut q, mut r) = rest.div_mod_floor(p);
        if r > half {
            r -= p;
            q += 1;
        }
        digits.push(r);
        rest = q;
    }
    if !rest.is_zero() {
        return Err(Error::ValueOutOfRange { digits: num_digits });
    }
    Ok(digits)
}

/// Σ d_i p^i. Digits are not range-checked.
pub fn balanced_encode(digits: &[BigInt], p: &BigInt) -> BigInt {
    digits
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, d| acc * p + d)
}

/// True when every digit lies in [-⌊p/2⌋, ⌊p/2⌋].
pub fn digits_in_range(digits: &[BigInt], p: &BigInt) -> bool {
    let half = p >> 1u32;
    digits.iter().all(|d| d.abs() <= half)
}
