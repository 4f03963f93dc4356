//! Integral LLL reduction (δ = 3/4) on exact Gram determinants.
//!
//! Follows the all-integer formulation: the Gram–Schmidt data lives in the
//! integers `d_i` and `λ_ij = d_j μ_ij`, so no rational arithmetic is needed
//! and every division below is exact.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, dot, BigMat, IntegralGso};

/// An LLL-reduced basis with the unimodular transform that produced it:
/// `reduced = original · transform`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LllBasis {
    pub reduced: BigMat,
    pub transform: BigMat,
}

pub fn lll_reduce(b: &BigMat) -> Result<LllBasis> {
    let (basis, _) = lll_with_gso(b)?;
    Ok(basis)
}

struct State {
    basis: BigMat,
    transform: BigMat,
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
}

impl State {
    /// Size-reduces column k against column l (l < k).
    fn reduce(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        let two_lambda = &self.lambda[k][l] << 1u32;
        if two_lambda.abs() <= *dl {
            return;
        }
        let q = (two_lambda + dl).div_floor(&(dl << 1u32));
        sub_scaled_column(&mut self.basis, k, l, &q);
        sub_scaled_column(&mut self.transform, k, l, &q);
        self.lambda[k][l] -= &q * dl;
        for i in 0..l {
            let delta = &q * &self.lambda[l][i];
            self.lambda[k][i] -= delta;
        }
    }

    /// Lovász condition between columns k-1 and k, δ = 3/4:
    /// 4 d_{k+1} d_{k-1} ≥ 3 d_k² - 4 λ².
    fn lovasz_holds(&self, k: usize) -> bool {
        let lam = &self.lambda[k][k - 1];
        let lhs = (&self.d[k + 1] * &self.d[k - 1]) << 2u32;
        let rhs = BigInt::from(3) * &self.d[k] * &self.d[k] - ((lam * lam) << 2u32);
        lhs >= rhs
    }

    fn swap(&mut self, k: usize, k_max: usize) {
        self.basis.columns_mut().swap(k, k - 1);
        self.transform.columns_mut().swap(k, k - 1);
        for j in 0..k - 1 {
            let tmp = core::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = core::mem::replace(&mut self.lambda[k - 1][j], tmp);
        }
        let lam = self.lambda[k][k - 1].clone();
        let new_d = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=k_max {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&new_d * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = new_d;
    }

    /// Extends the Gram–Schmidt data to column k.
    fn extend(&mut self, k: usize) -> Result<()> {
        for j in 0..=k {
            let mut u = dot(self.basis.column(k), self.basis.column(j));
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i];
            }
            if j < k {
                self.lambda[k][j] = u;
            } else {
                if u.is_zero() {
                    return Err(Error::SingularBasis);
                }
                self.d[k + 1] = u;
            }
        }
        Ok(())
    }
}

fn sub_scaled_column(m: &mut BigMat, k: usize, l: usize, q: &BigInt) {
    let cols = m.columns_mut();
    let (lo, hi) = cols.split_at_mut(k);
    for (a, b) in hi[0].iter_mut().zip(&lo[l]) {
        *a -= q * b;
    }
}

pub(crate) fn lll_with_gso(b: &BigMat) -> Result<(LllBasis, IntegralGso)> {
    let n = b.dim();
    if det_bareiss(b).is_zero() {
        return Err(Error::SingularBasis);
    }
    let mut st = State {
        basis: b.clone(),
        transform: BigMat::identity(n),
        d: alloc::vec![BigInt::zero(); n + 1],
        lambda: alloc::vec![alloc::vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::from(1);
    st.extend(0)?;
    let mut k = 1;
    let mut k_max = 0;
    while k < n {
        if k > k_max {
            k_max = k;
            st.extend(k)?;
        }
        st.reduce(k, k - 1);
        if !st.lovasz_holds(k) {
            st.swap(k, k_max);
            if k > 1 {
                k -= 1;
            }
            continue;
        }
        for l in (0..k - 1).rev() {
            st.reduce(k, l);
        }
        k += 1;
    }
    debug_assert!(det_bareiss(&st.transform).abs() == BigInt::from(1));
    debug_assert!(b.mul(&st.transform).as_ref() == Ok(&st.basis));
    let gso = IntegralGso {
        d: st.d,
        lambda: st.lambda,
    };
    debug_assert!(IntegralGso::new(&st.basis).as_ref() == Ok(&gso));
    Ok((
        LllBasis {
            reduced: st.basis,
            transform: st.transform,
        },
        gso,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gram_schmidt, norm_sq_slice, Rational};
    use num_traits::One;
    use proptest::prelude::*;

    fn assert_reduced(original: &BigMat, out: &LllBasis) {
        assert_eq!(det_bareiss(&out.transform).abs(), BigInt::one());
        assert_eq!(original.mul(&out.transform).unwrap(), out.reduced);
        let gs = gram_schmidt(&out.reduced).unwrap();
        let norms = gs.norms_sq();
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let delta = Rational::new(BigInt::from(3), BigInt::from(4));
        for i in 0..out.reduced.dim() {
            for j in 0..i {
                assert!(gs.mu[i][j].abs() <= half, "size reduction fails at ({i},{j})");
            }
            if i > 0 {
                let m = &gs.mu[i][i - 1];
                assert!(norms[i] >= (&delta - m * m) * &norms[i - 1], "Lovász fails at {i}");
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let id = BigMat::identity(2);
        let out = lll_reduce(&id).unwrap();
        assert_eq!(out.reduced, id);
        assert_eq!(out.transform, id);
    }

    #[test]
    fn one_by_one_is_fixed() {
        let b = BigMat::from_i64_rows(&[[2]]);
        let out = lll_reduce(&b).unwrap();
        assert_eq!(out.reduced, b);
        assert_eq!(out.transform, BigMat::identity(1));
    }

    #[test]
    fn skewed_pair_reduces_to_unit_vectors() {
        // columns (1,0) and (10,1) generate Z²
        let b = BigMat::from_i64_rows(&[[1, 10], [0, 1]]);
        let out = lll_reduce(&b).unwrap();
        assert_reduced(&b, &out);
        assert_eq!(norm_sq_slice(out.reduced.column(0)), BigInt::one());
        assert_eq!(norm_sq_slice(out.reduced.column(1)), BigInt::one());
    }

    #[test]
    fn singular_input_is_rejected() {
        let b = BigMat::from_i64_rows(&[[1, 2], [2, 4]]);
        assert_eq!(lll_reduce(&b), Err(Error::SingularBasis));
    }

    #[test]
    fn classic_three_dimensional_example() {
        let b = BigMat::from_i64_rows(&[[1, -1, 3], [1, 0, 5], [1, 2, 6]]);
        let out = lll_reduce(&b).unwrap();
        assert_reduced(&b, &out);
    }

    proptest! {
        #[test]
        fn output_is_lll_reduced(n in 1usize..=4, entries in prop::collection::vec(-20i64..=20, 16)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..i * n + n].to_vec()).collect();
            let b = BigMat::from_i64_rows(&rows);
            prop_assume!(!det_bareiss(&b).is_zero());
            let out = lll_reduce(&b).unwrap();
            assert_reduced(&b, &out);
        }

        #[test]
        fn huge_scaled_bases_reduce(entries in prop::collection::vec(-3i64..=3, 9), shift in 200u32..600) {
            let rows: Vec<Vec<i64>> = (0..3).map(|i| entries[i * 3..i * 3 + 3].to_vec()).collect();
            let small = BigMat::from_i64_rows(&rows);
            prop_assume!(!det_bareiss(&small).is_zero());
            let scale = BigInt::one() << shift;
            let big = BigMat::from_rows(
                small.rows().into_iter().enumerate().map(|(i, r)| {
                    r.into_iter().enumerate().map(|(j, v)| v * &scale + BigInt::from((i == 0) as u8) * BigInt::from(j as i64 + 1)).collect()
                }).collect()
            ).unwrap();
            prop_assume!(!det_bareiss(&big).is_zero());
            let out = lll_reduce(&big).unwrap();
            assert_reduced(&big, &out);
        }
    }
}
