//! Optimization oracles for SVP and CVP.
//!
//! The enumeration oracles see nothing but a basis (and a target): LLL
//! preprocessing followed by exact Fincke–Pohst enumeration. The assisted
//! oracles instead minimize the perturbed norm over the brute-forced
//! solution set of the original basis, which gives an independent second
//! route to the same value on small instances.

mod enumerate;
mod lll;

use core::sync::atomic::{AtomicUsize, Ordering};

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot, mat_vec, norm_sq, BigMat, BigVec, Rational};
use crate::verifier;

pub use lll::{lll_reduce, LllBasis};

use enumerate::Enumerator;

/// An exact optimum reported by an oracle. `min_sq` is λ₁² for SVP and the
/// squared distance for CVP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub min_sq: BigInt,
    pub calls_used: u64,
}

/// Solves optimization SVP: returns λ₁(L(basis))², never a vector.
pub trait SvpOracle {
    fn min_sq(&self, basis: &BigMat) -> Result<BigInt>;
}

/// Solves optimization CVP: returns dist(target, L(basis))², never a vector.
pub trait CvpOracle {
    fn min_dist_sq(&self, basis: &BigMat, target: &BigVec) -> Result<BigInt>;
}

impl<O: SvpOracle + ?Sized> SvpOracle for &O {
    fn min_sq(&self, basis: &BigMat) -> Result<BigInt> {
        (**self).min_sq(basis)
    }
}

impl<O: CvpOracle + ?Sized> CvpOracle for &O {
    fn min_dist_sq(&self, basis: &BigMat, target: &BigVec) -> Result<BigInt> {
        (**self).min_dist_sq(basis, target)
    }
}

/// Wraps an oracle with a call counter. The counter is atomic so a shared
/// oracle can be queried from several threads.
#[derive(Debug, Default)]
pub struct Counted<O> {
    inner: O,
    calls: AtomicUsize,
}

impl<O> Counted<O> {
    pub fn new(inner: O) -> Self {
        Counted {
            inner,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::SeqCst) as u64
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    fn tick(&self) -> u64 {
        self.calls.fetch_add(1, Ordering::SeqCst) as u64 + 1
    }
}

impl<O: SvpOracle> Counted<O> {
    pub fn query(&self, basis: &BigMat) -> Result<OracleAnswer> {
        let calls_used = self.tick();
        let min_sq = self.inner.min_sq(basis)?;
        Ok(OracleAnswer { min_sq, calls_used })
    }
}

impl<O: CvpOracle> Counted<O> {
    pub fn query_target(&self, basis: &BigMat, target: &BigVec) -> Result<OracleAnswer> {
        let calls_used = self.tick();
        let min_sq = self.inner.min_dist_sq(basis, target)?;
        Ok(OracleAnswer { min_sq, calls_used })
    }
}

/// LLL + exact enumeration.
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOracle;

impl SvpOracle for EnumOracle {
    fn min_sq(&self, basis: &BigMat) -> Result<BigInt> {
        Ok(shortest(basis)?.1)
    }
}

impl CvpOracle for EnumOracle {
    fn min_dist_sq(&self, basis: &BigMat, target: &BigVec) -> Result<BigInt> {
        Ok(closest(basis, target)?.1)
    }
}

/// Brute-force-assisted oracle bound to the original instance. Queried with
/// a perturbed basis B_ε, it returns the minimum of ‖B_ε x‖² over the
/// solution set of B (resp. of ‖B_ε x − εt‖² over the closest-point set of
/// (B, t)), which equals the true optimum whenever the perturbed solution set
/// is contained in the original one.
#[derive(Clone, Debug)]
pub struct AssistedOracle {
    original: BigMat,
    target: Option<BigVec>,
}

impl AssistedOracle {
    pub fn new(original: BigMat) -> Self {
        AssistedOracle {
            original,
            target: None,
        }
    }

    /// For CVP queries: `target` is the unscaled target t of the instance.
    pub fn with_target(original: BigMat, target: BigVec) -> Self {
        AssistedOracle {
            original,
            target: Some(target),
        }
    }
}

impl SvpOracle for AssistedOracle {
    fn min_sq(&self, basis: &BigMat) -> Result<BigInt> {
        Ok(svp_opt_assisted(basis, &self.original)?.min_sq)
    }
}

impl CvpOracle for AssistedOracle {
    fn min_dist_sq(&self, basis: &BigMat, target: &BigVec) -> Result<BigInt> {
        let zero;
        let t = match &self.target {
            Some(t) => t,
            None => {
                zero = BigVec::zeros(self.original.dim());
                &zero
            }
        };
        Ok(cvp_opt_assisted(basis, target, &self.original, t)?.min_sq)
    }
}

/// Coefficients of every shortest vector (in the original basis) and λ₁².
fn shortest_all(b: &BigMat) -> Result<(Vec<BigVec>, BigInt)> {
    let (reduced, gso) = lll::lll_with_gso(b)?;
    let n = b.dim();
    let en = Enumerator::new(&gso, &alloc::vec![BigInt::zero(); n]);
    let radius = Rational::from_integer(norm_sq(&BigVec(reduced.reduced.column(0).to_vec())));
    let found = en
        .minimize(radius, true)
        .expect("the first reduced vector lies within its own radius");
    let min_sq = found.value.to_integer();
    let points = found
        .points
        .into_iter()
        .map(|y| mat_vec(&reduced.transform, &BigVec(y)))
        .collect::<Result<Vec<_>>>()?;
    Ok((points, min_sq))
}

fn shortest(b: &BigMat) -> Result<(BigVec, BigInt)> {
    let (points, min_sq) = shortest_all(b)?;
    let x = points
        .into_iter()
        .map(|mut x| {
            x.normalize_sign();
            x
        })
        .min()
        .expect("enumeration returns at least one minimizer");
    debug_assert_eq!(norm_sq(&mat_vec(b, &x)?), min_sq);
    Ok((x, min_sq))
}

fn closest(b: &BigMat, t: &BigVec) -> Result<(BigVec, BigInt)> {
    let n = b.dim();
    if t.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.len(),
        });
    }
    let (reduced, gso) = lll::lll_with_gso(b)?;
    let gram_target: Vec<BigInt> = reduced
        .reduced
        .columns()
        .iter()
        .map(|c| dot(c, t.as_slice()))
        .collect();
    let en = Enumerator::new(&gso, &gram_target);
    let babai = BigVec(en.babai());
    let radius = norm_sq(&mat_vec(&reduced.reduced, &babai)?.sub(t)?);
    let found = en
        .minimize(Rational::from_integer(radius), false)
        .expect("the Babai point lies within its own radius");
    let min_sq = found.value.to_integer();
    let x = found
        .points
        .into_iter()
        .map(|y| mat_vec(&reduced.transform, &BigVec(y)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("enumeration returns at least one minimizer");
    Ok((x, min_sq))
}

/// λ₁(L(B))² by LLL and exact enumeration.
pub fn svp_opt_enum(b: &BigMat) -> Result<OracleAnswer> {
    Ok(OracleAnswer {
        min_sq: shortest(b)?.1,
        calls_used: 1,
    })
}

/// A shortest vector's coefficients together with λ₁².
///
/// Among all minimizers, each normalized so its first nonzero coordinate is
/// positive, the lexicographically smallest (comparing x₁ first, as signed
/// integers) is returned. For the identity that is (0, 1).
pub fn svp_search_enum(b: &BigMat) -> Result<(BigVec, BigInt)> {
    shortest(b)
}

/// dist(t, L(B))² by Babai's nearest plane and exact enumeration around it.
pub fn cvp_opt_enum(b: &BigMat, t: &BigVec) -> Result<OracleAnswer> {
    Ok(OracleAnswer {
        min_sq: closest(b, t)?.1,
        calls_used: 1,
    })
}

/// A closest lattice point's coefficients (lexicographically smallest among
/// all minimizers) together with the squared distance.
pub fn cvp_search_enum(b: &BigMat, t: &BigVec) -> Result<(BigVec, BigInt)> {
    closest(b, t)
}

/// min over x ∈ S_B of ‖B_ε x‖², with S_B found by brute force inside the
/// certified coefficient box of B. Refuses boxes above the verifier cap.
pub fn svp_opt_assisted(b_eps: &BigMat, b: &BigMat) -> Result<OracleAnswer> {
    if b_eps.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: b_eps.dim(),
        });
    }
    let bounds = verifier::svp_coefficient_box(b)?;
    let truth = verifier::brute_svp_within(b, &bounds)?;
    let min_sq = truth
        .solutions
        .iter()
        .map(|x| mat_vec(b_eps, x).map(|v| norm_sq(&v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("a nonsingular lattice has a shortest vector");
    Ok(OracleAnswer {
        min_sq,
        calls_used: 1,
    })
}

/// CVP analogue of [`svp_opt_assisted`]: minimizes ‖B_ε x − query‖² over
/// the brute-forced closest-point set of (B, t).
pub fn cvp_opt_assisted(
    b_eps: &BigMat,
    query: &BigVec,
    b: &BigMat,
    t: &BigVec,
) -> Result<OracleAnswer> {
    let n = b.dim();
    for found in [b_eps.dim(), query.len(), t.len()] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    let bounds = verifier::cvp_coefficient_box(b, t)?;
    let truth = verifier::brute_cvp_within(b, t, &bounds)?;
    let min_sq = truth
        .solutions
        .iter()
        .map(|x| mat_vec(b_eps, x).and_then(|v| v.sub(query)).map(|d| norm_sq(&d)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("every target has a closest lattice point");
    Ok(OracleAnswer {
        min_sq,
        calls_used: 1,
    })
}
