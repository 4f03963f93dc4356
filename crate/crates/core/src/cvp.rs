//! Search CVP from a single optimization-CVP query.
//!
//! Same perturbed basis B_ε as the SVP reduction, queried with the scaled
//! target ε_{n+1}t. For the closest coefficient vector x,
//!
//! ```text
//! ‖B_ε x − ε_{n+1}t‖² = ε_{n+1}²‖Bx−t‖² + Σ x_i²ε_i² + Σ 2c_t(x)x_i ε_{n+1}ε_i + Σ_{i<j} 2x_i x_j ε_iε_j
//! ```
//!
//! with c_t(x) = (Bx − t)_1, so the digit layout and decoder are shared with
//! the SVP pipeline. Unlike SVP, x = 0 is a legal answer and the global sign
//! of x is not free; the first-row cross digits settle it.
//!
//! Bounds: with T ≥ ‖t‖, any closest x has ‖Bx − t‖ ≤ T, so
//! M₂ = n(M+1)(T+1) and, by Cramer's rule on Bx = t + e with ‖e‖ ≤ T,
//! M₁ = 2nⁿ(M+1)ⁿ(2T+1). Both are deliberately loose.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Inconsistency, Result};
use crate::linalg::{det_bareiss, mat_vec, norm_sq, BigMat, BigVec};
use crate::oracle::{Counted, CvpOracle};
use crate::reduction::{
    check_det_bound, construct_b_epsilon, decode_value, matches_profile, recover, DecodedProfile,
    ReductionParams,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvpParams {
    pub base: ReductionParams,
    pub target: BigVec,
    /// ⌈‖t‖⌉.
    pub t_norm_bound: BigInt,
}

/// ⌈√v⌉ for v ≥ 0.
fn ceil_sqrt(v: &BigInt) -> BigInt {
    let r = v.sqrt();
    if &(&r * &r) < v {
        r + 1
    } else {
        r
    }
}

pub fn compute_cvp_params(b: &BigMat, t: &BigVec) -> Result<CvpParams> {
    let n = b.dim();
    if t.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.len(),
        });
    }
    if det_bareiss(b).is_zero() {
        return Err(Error::SingularBasis);
    }
    let max_entry = b.max_abs_entry();
    let t_norm_bound = ceil_sqrt(&norm_sq(t));
    let nn = BigInt::from(n);
    let m_plus: BigInt = &max_entry + 1;
    let m2 = &nn * &m_plus * (&t_norm_bound + 1);
    let m1 = BigInt::from(2)
        * nn.pow(n as u32)
        * m_plus.pow(n as u32)
        * (BigInt::from(2) * &t_norm_bound + 1);
    Ok(CvpParams {
        base: ReductionParams::from_bounds(n, max_entry, m1, m2),
        target: t.clone(),
        t_norm_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvpSolution {
    pub x: BigVec,
    /// w = Bx, a closest lattice vector to t.
    pub w: BigVec,
    /// ‖w − t‖².
    pub dist_sq: BigInt,
    /// The oracle's dist(ε_{n+1}t, L(B_ε))².
    pub oracle_value: BigInt,
    pub oracle_calls: u64,
    pub params: CvpParams,
    pub profile: DecodedProfile,
}

/// Finds a closest vector of L(B) to the integer target t with exactly one
/// optimization-CVP query on (B_ε, ε_{n+1}t).
pub fn search_cvp_via_opt<O: CvpOracle>(
    b: &BigMat,
    t: &BigVec,
    oracle: &Counted<O>,
) -> Result<CvpSolution> {
    let params = compute_cvp_params(b, t)?;
    let base = &params.base;
    let b_eps = construct_b_epsilon(b, base)?;
    if !check_det_bound(&b_eps, base) {
        return Err(Error::DetBoundViolated);
    }
    let scaled_target = t.scaled(base.eps_top());
    let before = oracle.calls();
    let answer = oracle.query_target(&b_eps, &scaled_target)?;
    let oracle_calls = answer.calls_used - before;

    let profile = decode_value(&answer.min_sq, base)?;
    let magnitude = recover(&profile, true)?;
    // x and -x share every square and pair digit; keep the one that
    // reproduces the norm and first-row cross digits
    let negated = BigVec(magnitude.iter().map(|v| -v).collect());
    let mut found = None;
    for x in [magnitude, negated] {
        let w = mat_vec(b, &x)?;
        let offset = w.sub(t)?;
        if matches_profile(&x, &offset, &profile) {
            found = Some((x, w));
            break;
        }
    }
    let (x, w) = found.ok_or(Inconsistency::ProfileMismatch)?;
    debug_assert_eq!(
        norm_sq(&mat_vec(&b_eps, &x)?.sub(&scaled_target)?),
        answer.min_sq
    );
    debug_assert!(!profile.bx_norm_sq.is_negative());
    Ok(CvpSolution {
        dist_sq: profile.bx_norm_sq.clone(),
        x,
        w,
        oracle_value: answer.min_sq,
        oracle_calls,
        params,
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{AssistedOracle, EnumOracle};

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ceil_sqrt_values() {
        assert_eq!(ceil_sqrt(&int(0)), int(0));
        assert_eq!(ceil_sqrt(&int(25)), int(5));
        assert_eq!(ceil_sqrt(&int(26)), int(6));
        assert_eq!(ceil_sqrt(&int(2)), int(2));
    }

    #[test]
    fn params_follow_the_loose_bounds() {
        let b = BigMat::identity(2);
        let p = compute_cvp_params(&b, &BigVec::from_i64s(&[3, 4])).unwrap();
        assert_eq!(p.t_norm_bound, int(5));
        assert_eq!(p.base.m2, int(2 * 2 * 6));
        assert_eq!(p.base.m1, int(2 * 4 * 4 * 11));
        assert!(p.base.p.bit(0));
    }

    #[test]
    fn integer_target_in_unit_lattice() {
        let oracle = Counted::new(EnumOracle);
        let s = search_cvp_via_opt(&BigMat::identity(2), &BigVec::from_i64s(&[3, 4]), &oracle).unwrap();
        assert_eq!(s.x, BigVec::from_i64s(&[3, 4]));
        assert_eq!(s.w, BigVec::from_i64s(&[3, 4]));
        assert_eq!(s.dist_sq, int(0));
        assert_eq!(s.oracle_calls, 1);
    }

    #[test]
    fn tie_resolved_by_oracle_value() {
        let oracle = Counted::new(EnumOracle);
        let s = search_cvp_via_opt(&BigMat::from_i64_rows(&[[2]]), &BigVec::from_i64s(&[1]), &oracle).unwrap();
        assert_eq!(s.dist_sq, int(1));
        // the perturbation favours x = 0: (ε₂)² < (ε₂ + ε₁)²
        assert_eq!(s.x, BigVec::from_i64s(&[0]));
    }

    #[test]
    fn lattice_target_decodes_to_zero() {
        let oracle = Counted::new(EnumOracle);
        let b = BigMat::from_i64_rows(&[[2, 0], [0, 2]]);
        let s = search_cvp_via_opt(&b, &BigVec::from_i64s(&[0, 0]), &oracle).unwrap();
        assert_eq!(s.x, BigVec::zeros(2));
        assert_eq!(s.w, BigVec::zeros(2));
        assert_eq!(s.dist_sq, int(0));
    }

    #[test]
    fn negative_coefficients_keep_their_sign() {
        let b = BigMat::from_i64_rows(&[[1, 1], [0, 1]]);
        let t = BigVec::from_i64s(&[-3, -1]);
        let s = search_cvp_via_opt(&b, &t, &Counted::new(EnumOracle)).unwrap();
        assert_eq!(s.w, t);
        assert_eq!(s.x, BigVec::from_i64s(&[-2, -1]));
    }

    #[test]
    fn assisted_oracle_agrees() {
        let b = BigMat::from_i64_rows(&[[2, 1], [-1, 2]]);
        let t = BigVec::from_i64s(&[3, -2]);
        let a = search_cvp_via_opt(&b, &t, &Counted::new(EnumOracle)).unwrap();
        let oracle = Counted::new(AssistedOracle::with_target(b.clone(), t.clone()));
        let c = search_cvp_via_opt(&b, &t, &oracle).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn wrong_target_length_is_rejected() {
        let oracle = Counted::new(EnumOracle);
        assert_eq!(
            search_cvp_via_opt(&BigMat::identity(2), &BigVec::from_i64s(&[1]), &oracle),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
        assert_eq!(oracle.calls(), 0);
    }
}
