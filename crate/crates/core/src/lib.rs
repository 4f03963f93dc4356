//! Exact lattice arithmetic and one-call reductions from search SVP/CVP to
//! their optimization variants.
//!
//! The crate is `no_std` (with `alloc`). All arithmetic is exact: big
//! integers throughout, rationals only inside Gram–Schmidt data, and squared
//! norms in place of lengths.
//!
//! ```
//! use onecall_core::{search_svp_via_opt, BigMat, Counted, EnumOracle};
//!
//! let b = BigMat::from_i64_rows(&[[1, 1], [0, 1]]);
//! let oracle = Counted::new(EnumOracle);
//! let sol = search_svp_via_opt(&b, &oracle).unwrap();
//! assert_eq!(sol.lambda_sq, 1.into());
//! assert_eq!(oracle.calls(), 1);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cvp;
pub mod digits;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod reduction;
pub mod verifier;

pub use cvp::{compute_cvp_params, search_cvp_via_opt, CvpParams, CvpSolution};
pub use digits::{balanced_decode, balanced_encode};
pub use error::{Error, Inconsistency, Result};
pub use linalg::{det_bareiss, gram_schmidt, mat_vec, norm_sq, BigMat, BigVec, GramSchmidt, Rational};
pub use oracle::{
    cvp_opt_enum, lll_reduce, svp_opt_assisted, svp_opt_enum, svp_search_enum, AssistedOracle,
    Counted, CvpOracle, EnumOracle, LllBasis, OracleAnswer, SvpOracle,
};
pub use reduction::{
    check_det_bound, compute_params, construct_b_epsilon, decode_profile, gen_exponents,
    recover_signs, search_svp_via_opt, DecodedProfile, ReductionParams, Slot, SvpSolution,
};
pub use verifier::{brute_cvp, brute_svp, check_inclusion, BruteForce};

pub use num_bigint::BigInt;
