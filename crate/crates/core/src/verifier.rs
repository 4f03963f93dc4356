//! Brute-force ground truth: exhaustive scans over coefficient boxes.
//!
//! The scans share nothing with the enumeration oracles. When every value
//! fits comfortably in 128 bits the scan runs on machine integers,
//! otherwise on big integers.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{AddAssign, Mul, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{adjugate, det_bareiss, norm_sq, norm_sq_slice, BigMat, BigVec};
use crate::reduction::{construct_b_epsilon, ReductionParams};

/// Largest number of box points a scan will visit.
pub const BOX_CAP: u128 = 100_000_000;

/// Exact optimum of a scan and every coefficient vector attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForce {
    pub min_sq: BigInt,
    pub solutions: BTreeSet<BigVec>,
}

/// Shortest nonzero vectors with |x_i| ≤ `bound`.
pub fn brute_svp(b: &BigMat, bound: &BigInt) -> Result<BruteForce> {
    brute_svp_within(b, &vec![bound.clone(); b.dim()])
}

/// Shortest nonzero vectors with |x_i| ≤ `bounds[i]`.
pub fn brute_svp_within(b: &BigMat, bounds: &[BigInt]) -> Result<BruteForce> {
    scan(b, None, bounds)
}

/// Closest lattice points to `t` with |x_i| ≤ `bound` (x = 0 included).
pub fn brute_cvp(b: &BigMat, t: &BigVec, bound: &BigInt) -> Result<BruteForce> {
    brute_cvp_within(b, t, &vec![bound.clone(); b.dim()])
}

pub fn brute_cvp_within(b: &BigMat, t: &BigVec, bounds: &[BigInt]) -> Result<BruteForce> {
    if t.len() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: t.len(),
        });
    }
    scan(b, Some(t), bounds)
}

/// Whether S_{B_ε} ⊆ S_B, with both sets found by brute force over
/// |x_i| ≤ `bound`.
pub fn check_inclusion(b: &BigMat, params: &ReductionParams, bound: &BigInt) -> Result<bool> {
    let b_eps = construct_b_epsilon(b, params)?;
    let original = brute_svp(b, bound)?;
    let perturbed = brute_svp(&b_eps, bound)?;
    Ok(perturbed.solutions.is_subset(&original.solutions))
}

/// Per-coordinate bounds containing every shortest-vector coefficient
/// vector of B.
///
/// With y = Bx a shortest vector, x_i = <r_i, y> for the i-th row r_i of
/// B⁻¹ = adj(B)/det(B), so |x_i|² ≤ ‖r_i‖² λ₁² ≤ ‖adj_i‖² L / det², where L
/// is the smallest squared column norm. Always at least as tight as the
/// nⁿMⁿ coefficient bound.
pub fn svp_coefficient_box(b: &BigMat) -> Result<Vec<BigInt>> {
    let shortest_column = b
        .columns()
        .iter()
        .map(|c| norm_sq_slice(c))
        .min()
        .expect("bases are non-empty");
    dual_box(b, &shortest_column)
}

/// Per-coordinate bounds containing every closest-point coefficient vector
/// for target t: ‖Bx − t‖ ≤ ‖t‖ gives ‖Bx‖ ≤ 2‖t‖, hence
/// |x_i|² ≤ 4 ‖r_i‖² ‖t‖².
pub fn cvp_coefficient_box(b: &BigMat, t: &BigVec) -> Result<Vec<BigInt>> {
    dual_box(b, &(norm_sq(t) << 2u32))
}

fn dual_box(b: &BigMat, image_norm_sq: &BigInt) -> Result<Vec<BigInt>> {
    let det = det_bareiss(b);
    if det.is_zero() {
        return Err(Error::SingularBasis);
    }
    let adj = adjugate(b);
    let det_sq = &det * &det;
    Ok((0..b.dim())
        .map(|i| (norm_sq_slice(&adj.row(i)) * image_norm_sq / &det_sq).sqrt())
        .collect())
}

fn box_points(bounds: &[BigInt]) -> Result<Vec<i64>> {
    let mut points: u128 = 1;
    let mut small = Vec::with_capacity(bounds.len());
    for h in bounds {
        let side = h
            .to_u128()
            .and_then(|h| h.checked_mul(2))
            .and_then(|s| s.checked_add(1));
        points = match side {
            Some(s) => points.saturating_mul(s),
            None => u128::MAX,
        };
        small.push(h.to_i64().unwrap_or(i64::MAX));
    }
    if points > BOX_CAP {
        return Err(Error::BoxTooLarge {
            points,
            cap: BOX_CAP,
        });
    }
    Ok(small)
}

trait Scalar: Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self>,
{
    fn from_big(v: &BigInt) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("range checked before the scan")
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn scan(b: &BigMat, t: Option<&BigVec>, bounds: &[BigInt]) -> Result<BruteForce> {
    let n = b.dim();
    if bounds.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bounds.len(),
        });
    }
    if bounds.iter().any(Signed::is_negative) {
        return Err(Error::EmptyBox);
    }
    let bounds = box_points(bounds)?;
    // |(Bx - t)_i| ≤ n·M·max_h + max|t|; keep squares and their sum inside i128
    let max_h: i64 = bounds.iter().copied().max().unwrap_or(0);
    let worst = BigInt::from(n) * b.max_abs_entry() * BigInt::from(max_h)
        + t.map(BigVec::max_abs).unwrap_or_default();
    let fits = worst < (BigInt::one() << 60u32) && n <= 64;
    let (min_sq, solutions) = if fits {
        scan_with::<i128>(b, t, &bounds)
    } else {
        scan_with::<BigInt>(b, t, &bounds)
    };
    Ok(BruteForce {
        min_sq: min_sq.ok_or(Error::EmptyBox)?,
        solutions,
    })
}

/// Odometer over the box, updating Bx − t incrementally.
fn scan_with<T: Scalar>(
    b: &BigMat,
    t: Option<&BigVec>,
    bounds: &[i64],
) -> (Option<BigInt>, BTreeSet<BigVec>)
where
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let n = b.dim();
    let exclude_zero = t.is_none();
    let cols: Vec<Vec<T>> = b
        .columns()
        .iter()
        .map(|c| c.iter().map(T::from_big).collect())
        .collect();
    // stepping coordinate i from +h back to -h subtracts 2h·b_i
    let wraps: Vec<Vec<T>> = cols
        .iter()
        .zip(bounds)
        .map(|(c, &h)| {
            let s = T::from_i64(2 * h);
            c.iter().map(|v| v * &s).collect()
        })
        .collect();
    let mut x: Vec<i64> = bounds.iter().map(|&h| -h).collect();
    let mut acc: Vec<T> = match t {
        Some(t) => t
            .iter()
            .map(|v| {
                let mut z = T::zero();
                z -= &T::from_big(v);
                z
            })
            .collect(),
        None => vec![T::zero(); n],
    };
    for (c, &xi) in cols.iter().zip(&x) {
        let s = T::from_i64(xi);
        for (a, v) in acc.iter_mut().zip(c) {
            *a += &(v * &s);
        }
    }

    let mut best: Option<T> = None;
    let mut sols: Vec<Vec<i64>> = Vec::new();
    loop {
        if !(exclude_zero && x.iter().all(|&v| v == 0)) {
            let mut value = T::zero();
            for a in &acc {
                value += &(a * a);
            }
            match &best {
                Some(m) if value > *m => {}
                Some(m) if value == *m => sols.push(x.clone()),
                _ => {
                    best = Some(value);
                    sols.clear();
                    sols.push(x.clone());
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                let solutions = sols
                    .into_iter()
                    .map(|s| BigVec::from_i64s(&s))
                    .collect();
                return (best.map(|m| m.to_big()), solutions);
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                for (a, v) in acc.iter_mut().zip(&cols[i]) {
                    *a += v;
                }
                break;
            }
            x[i] = -bounds[i];
            for (a, v) in acc.iter_mut().zip(&wraps[i]) {
                *a -= v;
            }
            i += 1;
        }
    }
}
