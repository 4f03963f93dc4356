//! Search SVP from a single optimization-SVP query.
//!
//! The basis is perturbed along its first row by powers of an odd modulus p,
//!
//! ```text
//! B_ε = ε_{n+1}·B + [ε_1 … ε_n; 0 …],   ε_i = p^{a_i},
//! ```
//!
//! so that for any shortest coefficient vector x of B_ε
//!
//! ```text
//! ‖B_ε x‖² = ‖Bx‖² ε_{n+1}² + Σ x_i² ε_i² + Σ 2c(x)x_i ε_{n+1}ε_i + Σ_{i<j} 2x_i x_j ε_i ε_j
//! ```
//!
//! with c(x) = (Bx)_1. The exponents a_i have pairwise-distinct pair sums and
//! every coefficient is bounded by ⌊p/2⌋, so the balanced base-p digits of
//! the oracle's λ₁(L(B_ε))² spell out each coefficient at its own position.
//! The x_i² and 2x_i x_j digits then determine x up to a global sign.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::digits::balanced_decode;
use crate::error::{Error, Inconsistency, Result};
use crate::linalg::{det_bareiss, mat_vec, norm_sq, BigMat, BigVec};
use crate::oracle::{Counted, SvpOracle};

/// a_k = (count² + k − 1)² for k = 1..=count. All sums a_i + a_j (i ≤ j)
/// are distinct.
pub fn gen_exponents(count: usize) -> Vec<u64> {
    let base = (count as u64) * (count as u64);
    (0..count as u64).map(|k| (base + k) * (base + k)).collect()
}

/// Everything derived from a basis before the oracle is queried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    pub n: usize,
    /// M(B), the largest absolute entry.
    pub max_entry: BigInt,
    /// Bound on the coefficients |x_i| of a shortest vector.
    pub m1: BigInt,
    /// Bound on ‖Bx‖ and on |c(x)|.
    pub m2: BigInt,
    pub p: BigInt,
    /// a_1 < … < a_{n+1}.
    pub exponents: Vec<u64>,
    /// ε_i = p^{a_i}.
    pub eps: Vec<BigInt>,
}

impl ReductionParams {
    /// Parameters for an n-dimensional basis with largest entry `max_entry`:
    /// M₂ = n(M+1), M₁ = 2(M+1)ⁿnⁿ.
    pub fn for_dimension(n: usize, max_entry: &BigInt) -> Self {
        let nn = BigInt::from(n);
        let m_plus: BigInt = max_entry + 1;
        let m2 = &nn * &m_plus;
        let m1 = BigInt::from(2) * m_plus.pow(n as u32) * nn.pow(n as u32);
        Self::from_bounds(n, max_entry.clone(), m1, m2)
    }

    /// p = 2·max{M₂², 2M₁M₂, 2M₁²} + 1 and ε_i = p^{a_i}.
    pub fn from_bounds(n: usize, max_entry: BigInt, m1: BigInt, m2: BigInt) -> Self {
        let two = BigInt::from(2);
        let largest = [&m2 * &m2, &two * &m1 * &m2, &two * &m1 * &m1]
            .into_iter()
            .max()
            .expect("three candidates");
        let p: BigInt = two * largest + 1;
        let exponents = gen_exponents(n + 1);
        let eps = exponents
            .iter()
            .map(|&a| num_traits::pow(p.clone(), a as usize))
            .collect();
        ReductionParams {
            n,
            max_entry,
            m1,
            m2,
            p,
            exponents,
            eps,
        }
    }

    /// ε_{n+1}, the scale applied to the whole basis.
    pub fn eps_top(&self) -> &BigInt {
        &self.eps[self.n]
    }

    /// 2a_{n+1} + 1: enough digits for the top coefficient ‖Bx‖².
    pub fn num_digits(&self) -> usize {
        2 * self.exponents[self.n] as usize + 1
    }

    /// Which coefficient each pair-sum digit position carries.
    pub fn digit_layout(&self) -> BTreeMap<u64, Slot> {
        let a = &self.exponents;
        let n = self.n;
        let mut layout = BTreeMap::new();
        for i in 0..=n {
            for j in i..=n {
                let slot = match (i == n, j == n, i == j) {
                    (true, _, _) => Slot::NormSq,
                    (false, true, _) => Slot::FirstRowCross(i),
                    (false, false, true) => Slot::Square(i),
                    (false, false, false) => Slot::Pair(i, j),
                };
                let prev = layout.insert(a[i] + a[j], slot);
                debug_assert!(prev.is_none(), "pair sums must be distinct");
            }
        }
        layout
    }
}

/// Coefficient carried by a digit position (indices are 0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// ‖Bx‖² (or ‖Bx − t‖² for CVP).
    NormSq,
    /// x_i².
    Square(usize),
    /// 2c(x)x_i.
    FirstRowCross(usize),
    /// 2x_i x_j, i < j.
    Pair(usize, usize),
}

pub fn compute_params(b: &BigMat) -> Result<ReductionParams> {
    if det_bareiss(b).is_zero() {
        return Err(Error::SingularBasis);
    }
    Ok(ReductionParams::for_dimension(b.dim(), &b.max_abs_entry()))
}

/// B_ε = ε_{n+1}B plus ε_j added to the first-row entry of column j.
pub fn construct_b_epsilon(b: &BigMat, params: &ReductionParams) -> Result<BigMat> {
    let n = b.dim();
    if params.n != n || params.eps.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: params.n,
        });
    }
    let top = params.eps_top();
    let cols = b
        .columns()
        .iter()
        .zip(&params.eps)
        .map(|(col, eps_j)| {
            let mut scaled: Vec<BigInt> = col.iter().map(|v| v * top).collect();
            scaled[0] += eps_j;
            scaled
        })
        .collect();
    BigMat::from_columns(cols)
}

/// 2·|det(B_ε)| ≥ ε_{n+1}ⁿ, i.e. |det(B_ε / ε_{n+1})| ≥ 1/2.
pub fn check_det_bound(b_eps: &BigMat, params: &ReductionParams) -> bool {
    let lhs = det_bareiss(b_eps).abs() << 1u32;
    lhs >= num_traits::pow(params.eps_top().clone(), params.n)
}

/// Coefficients read off the digits of the oracle's value. Indices are
/// 0-based; `cross_xx` lists 2x_i x_j for i < j in lexicographic order of
/// (i, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedProfile {
    pub bx_norm_sq: BigInt,
    pub x_sq: Vec<BigInt>,
    pub cross_c: Vec<BigInt>,
    pub cross_xx: Vec<BigInt>,
}

impl DecodedProfile {
    pub fn dim(&self) -> usize {
        self.x_sq.len()
    }

    /// 2x_i x_j for i < j.
    pub fn pair(&self, i: usize, j: usize) -> &BigInt {
        debug_assert!(i < j);
        &self.cross_xx[pair_index(self.dim(), i, j)]
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // rows 0..i contribute (n-1) + (n-2) + … + (n-i) pairs
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All 2a_{n+1}+1 balanced digits of the oracle value.
pub fn decode_digits(value: &BigInt, params: &ReductionParams) -> Result<Vec<BigInt>> {
    balanced_decode(value, &params.p, params.num_digits()).map_err(|e| match e {
        Error::ValueOutOfRange { .. } => Inconsistency::OutOfRange.into(),
        other => other,
    })
}

/// Splits λ₁(L(B_ε))² into its coefficient profile. Every digit off the
/// pair-sum positions must be zero and ‖Bx‖² must be positive.
pub fn decode_profile(lambda_sq: &BigInt, params: &ReductionParams) -> Result<DecodedProfile> {
    let profile = decode_value(lambda_sq, params)?;
    if !profile.bx_norm_sq.is_positive() {
        return Err(Inconsistency::BadNormDigit(profile.bx_norm_sq).into());
    }
    Ok(profile)
}

/// Shared by the SVP and CVP pipelines; the norm digit may be zero here.
pub(crate) fn decode_value(value: &BigInt, params: &ReductionParams) -> Result<DecodedProfile> {
    let n = params.n;
    let digits = decode_digits(value, params)?;
    let layout = params.digit_layout();
    let mut profile = DecodedProfile {
        bx_norm_sq: BigInt::zero(),
        x_sq: alloc::vec![BigInt::zero(); n],
        cross_c: alloc::vec![BigInt::zero(); n],
        cross_xx: alloc::vec![BigInt::zero(); n * n.saturating_sub(1) / 2],
    };
    for (position, digit) in digits.into_iter().enumerate() {
        let position = position as u64;
        match layout.get(&position) {
            None if !digit.is_zero() => {
                return Err(Inconsistency::StrayDigit { position }.into());
            }
            None => {}
            Some(Slot::NormSq) => profile.bx_norm_sq = digit,
            Some(&Slot::Square(i)) => profile.x_sq[i] = digit,
            Some(&Slot::FirstRowCross(i)) => profile.cross_c[i] = digit,
            Some(&Slot::Pair(i, j)) => profile.cross_xx[pair_index(n, i, j)] = digit,
        }
    }
    if profile.bx_norm_sq.is_negative() {
        return Err(Inconsistency::BadNormDigit(profile.bx_norm_sq).into());
    }
    if let Some(index) = profile.x_sq.iter().position(Signed::is_negative) {
        return Err(Inconsistency::NegativeSquare { index }.into());
    }
    Ok(profile)
}

/// Rebuilds x from the squares and pairwise products: the first nonzero
/// coordinate x_k is taken positive and x_j = sign(2x_k x_j)·√(x_j²). Every
/// pair (i, j) is then checked against its digit.
pub fn recover_signs(profile: &DecodedProfile) -> Result<BigVec> {
    recover(profile, false)
}

pub(crate) fn recover(profile: &DecodedProfile, allow_zero: bool) -> Result<BigVec> {
    let n = profile.dim();
    let mut magnitudes = Vec::with_capacity(n);
    for (index, sq) in profile.x_sq.iter().enumerate() {
        if sq.is_negative() {
            return Err(Inconsistency::NegativeSquare { index }.into());
        }
        let r = sq.sqrt();
        if &(&r * &r) != sq {
            return Err(Inconsistency::NotPerfectSquare { index }.into());
        }
        magnitudes.push(r);
    }
    let mut x = BigVec::zeros(n);
    match magnitudes.iter().position(|r| !r.is_zero()) {
        None if !allow_zero => return Err(Inconsistency::ZeroVector.into()),
        None => {}
        Some(k) => {
            x.0[k] = magnitudes[k].clone();
            for j in k + 1..n {
                if magnitudes[j].is_zero() {
                    continue;
                }
                let sign = profile.pair(k, j);
                if sign.is_zero() {
                    return Err(Inconsistency::PairMismatch { i: k, j }.into());
                }
                x.0[j] = if sign.is_negative() {
                    -&magnitudes[j]
                } else {
                    magnitudes[j].clone()
                };
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (&x[i] * &x[j]) << 1u32 != *profile.pair(i, j) {
                return Err(Inconsistency::PairMismatch { i, j }.into());
            }
        }
    }
    Ok(x)
}

/// Checks that x reproduces the norm digit and the first-row cross digits,
/// with `offset` = Bx − t (or Bx for SVP).
pub(crate) fn matches_profile(x: &BigVec, offset: &BigVec, profile: &DecodedProfile) -> bool {
    if norm_sq(offset) != profile.bx_norm_sq {
        return false;
    }
    let c = &offset[0];
    x.iter()
        .zip(&profile.cross_c)
        .all(|(xi, digit)| ((c * xi) << 1u32) == *digit)
}

/// Output of the search-SVP pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvpSolution {
    /// Coefficients of the shortest vector, first nonzero entry positive.
    pub x: BigVec,
    /// v = Bx.
    pub v: BigVec,
    /// λ₁(L(B))² = ‖v‖².
    pub lambda_sq: BigInt,
    /// The oracle's λ₁(L(B_ε))².
    pub oracle_value: BigInt,
    /// Oracle queries made by this run; always 1 on success.
    pub oracle_calls: u64,
    pub params: ReductionParams,
    pub profile: DecodedProfile,
}

/// Finds a shortest vector of L(B) with exactly one optimization-oracle
/// query on B_ε. Decode errors indicate an oracle whose answer is not
/// λ₁(L(B_ε))².
pub fn search_svp_via_opt<O: SvpOracle>(b: &BigMat, oracle: &Counted<O>) -> Result<SvpSolution> {
    let params = compute_params(b)?;
    let b_eps = construct_b_epsilon(b, &params)?;
    if !check_det_bound(&b_eps, &params) {
        return Err(Error::DetBoundViolated);
    }
    let before = oracle.calls();
    let answer = oracle.query(&b_eps)?;
    let oracle_calls = answer.calls_used - before;

    let profile = decode_profile(&answer.min_sq, &params)?;
    let x = recover_signs(&profile)?;
    let v = mat_vec(b, &x)?;
    if !matches_profile(&x, &v, &profile) {
        return Err(Inconsistency::ProfileMismatch.into());
    }
    debug_assert_eq!(norm_sq(&mat_vec(&b_eps, &x)?), answer.min_sq);
    Ok(SvpSolution {
        lambda_sq: profile.bx_norm_sq.clone(),
        x,
        v,
        oracle_value: answer.min_sq,
        oracle_calls,
        params,
        profile,
    })
}

impl SvpSolution {
    /// Convenience: `true` when v is nonzero and ‖v‖² matches the decoded norm.
    pub fn is_consistent(&self) -> bool {
        !self.v.is_zero() && norm_sq(&self.v) == self.lambda_sq && self.lambda_sq >= BigInt::one()
    }
}
