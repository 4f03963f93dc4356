//! File formats, instance generation and subcommand logic for the `onecall`
//! binary. `main.rs` only parses arguments and maps errors to exit codes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use onecall_core::reduction::decode_digits;
use onecall_core::verifier::{brute_cvp_within, brute_svp_within, cvp_coefficient_box, svp_coefficient_box};
use onecall_core::{
    search_cvp_via_opt, search_svp_via_opt, AssistedOracle, Counted, EnumOracle,
    ReductionParams, Slot,
};

pub mod format;
pub mod generate;

pub use format::{Instance, OracleKind, ParamsDigest, Problem, ResultRecord};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    BadInput(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("pipeline failed: {0}")]
    Pipeline(onecall_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Pipeline(_) => 2,
            CliError::BadInput(_) | CliError::Io { .. } => 3,
        }
    }
}

impl From<onecall_core::Error> for CliError {
    fn from(e: onecall_core::Error) -> Self {
        use onecall_core::Error as E;
        match e {
            E::SingularBasis | E::NotSquare | E::DimensionMismatch { .. } => {
                CliError::BadInput(e.to_string())
            }
            E::BoxTooLarge { .. } => {
                CliError::BadInput(format!("instance too large for the assisted oracle: {e}"))
            }
            other => CliError::Pipeline(other),
        }
    }
}

/// Result of checking an answer against brute force.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// The brute-force box is over the cap.
    Unverifiable,
    Refuted,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Verified => 0,
            Verdict::Unverifiable => 1,
            Verdict::Refuted => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutput {
    pub record: ResultRecord,
    pub verdict: Verdict,
    /// Decoding trace, filled in only when requested.
    pub trace: String,
}

fn slot_label(slot: Slot) -> String {
    match slot {
        Slot::NormSq => "norm^2".into(),
        Slot::Square(i) => format!("x_{}^2", i + 1),
        Slot::FirstRowCross(i) => format!("2c*x_{}", i + 1),
        Slot::Pair(i, j) => format!("2x_{}x_{}", i + 1, j + 1),
    }
}

/// Parameters, exponent positions and the decoded digit at every pair-sum
/// position of `oracle_value`.
pub fn trace(params: &ReductionParams, oracle_value: &BigInt) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p = {}", params.p);
    let _ = writeln!(out, "M1 = {}, M2 = {}", params.m1, params.m2);
    for (i, a) in params.exponents.iter().enumerate() {
        let _ = writeln!(out, "eps_{} = p^{a} ({} bits)", i + 1, params.eps[i].bits());
    }
    let _ = writeln!(out, "oracle value: {} bits", oracle_value.bits());
    let _ = writeln!(out, "{:>10}  {:<10}  digit", "position", "slot");
    match decode_digits(oracle_value, params) {
        Ok(digits) => {
            for (pos, slot) in params.digit_layout() {
                let _ = writeln!(out, "{pos:>10}  {:<10}  {}", slot_label(slot), digits[pos as usize]);
            }
            let _ = writeln!(out, "all other {} digits are zero", digits.len() - params.digit_layout().len());
        }
        Err(e) => {
            let _ = writeln!(out, "decode failed: {e}");
        }
    }
    out
}

pub fn solve_svp(inst: &Instance, oracle: OracleKind, want_trace: bool) -> Result<SolveOutput, CliError> {
    let b = inst.basis_matrix()?;
    let sol = match oracle {
        OracleKind::Enum => search_svp_via_opt(&b, &Counted::new(EnumOracle)),
        OracleKind::Assisted => search_svp_via_opt(&b, &Counted::new(AssistedOracle::new(b.clone()))),
    }?;
    let verdict = match svp_coefficient_box(&b).and_then(|bounds| brute_svp_within(&b, &bounds)) {
        Ok(truth) if truth.min_sq == sol.lambda_sq && truth.solutions.contains(&sol.x) => Verdict::Verified,
        Ok(_) => Verdict::Refuted,
        Err(onecall_core::Error::BoxTooLarge { .. }) => Verdict::Unverifiable,
        Err(e) => return Err(e.into()),
    };
    let record = ResultRecord {
        problem: Problem::Svp,
        x: format::to_strings(&sol.x),
        v: Some(format::to_strings(&sol.v)),
        w: None,
        min_sq: sol.lambda_sq.to_string(),
        oracle,
        oracle_calls: sol.oracle_calls,
        params_digest: ParamsDigest::from(&sol.params),
        verified: verdict == Verdict::Verified,
    };
    let trace = if want_trace { trace(&sol.params, &sol.oracle_value) } else { String::new() };
    Ok(SolveOutput { record, verdict, trace })
}

pub fn solve_cvp(inst: &Instance, oracle: OracleKind, want_trace: bool) -> Result<SolveOutput, CliError> {
    let b = inst.basis_matrix()?;
    let t = inst
        .target_vector()?
        .ok_or_else(|| CliError::BadInput("instance has no target".into()))?;
    let sol = match oracle {
        OracleKind::Enum => search_cvp_via_opt(&b, &t, &Counted::new(EnumOracle)),
        OracleKind::Assisted => search_cvp_via_opt(
            &b,
            &t,
            &Counted::new(AssistedOracle::with_target(b.clone(), t.clone())),
        ),
    }?;
    let verdict = match cvp_coefficient_box(&b, &t).and_then(|bounds| brute_cvp_within(&b, &t, &bounds)) {
        Ok(truth) if truth.min_sq == sol.dist_sq && truth.solutions.contains(&sol.x) => Verdict::Verified,
        Ok(_) => Verdict::Refuted,
        Err(onecall_core::Error::BoxTooLarge { .. }) => Verdict::Unverifiable,
        Err(e) => return Err(e.into()),
    };
    let record = ResultRecord {
        problem: Problem::Cvp,
        x: format::to_strings(&sol.x),
        v: None,
        w: Some(format::to_strings(&sol.w)),
        min_sq: sol.dist_sq.to_string(),
        oracle,
        oracle_calls: sol.oracle_calls,
        params_digest: ParamsDigest::from(&sol.params.base),
        verified: verdict == Verdict::Verified,
    };
    let trace = if want_trace { trace(&sol.params.base, &sol.oracle_value) } else { String::new() };
    Ok(SolveOutput { record, verdict, trace })
}

/// Reduction parameters for dimension `n` and entry bound `max_entry`.
pub fn params_report(n: usize, max_entry: &BigInt) -> Result<String, CliError> {
    if n == 0 || max_entry < &BigInt::from(1) {
        return Err(CliError::BadInput("need n >= 1 and max-entry >= 1".into()));
    }
    let params = ReductionParams::for_dimension(n, max_entry);
    let mut out = String::new();
    let _ = writeln!(out, "n = {n}");
    let _ = writeln!(out, "M = {max_entry}");
    let _ = writeln!(out, "M1 = {}", params.m1);
    let _ = writeln!(out, "M2 = {}", params.m2);
    let _ = writeln!(out, "p = {}", params.p);
    let a: Vec<String> = params.exponents.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "a = {}", a.join(" "));
    let _ = writeln!(out, "eps_{} bits = {}", n + 1, params.eps_top().bits());
    Ok(out)
}

/// Brute-force ground truth for an instance, optionally checked against a
/// result record. Returns a report and the verdict.
pub fn verify(inst: &Instance, record: Option<&ResultRecord>) -> Result<(String, Verdict), CliError> {
    let b = inst.basis_matrix()?;
    let target = inst.target_vector()?;
    let problem = match (record, &target) {
        (Some(r), _) => r.problem,
        (None, Some(_)) => Problem::Cvp,
        (None, None) => Problem::Svp,
    };
    let truth = match problem {
        Problem::Svp => svp_coefficient_box(&b).and_then(|bounds| brute_svp_within(&b, &bounds)),
        Problem::Cvp => {
            let t = target
                .as_ref()
                .ok_or_else(|| CliError::BadInput("cvp result but instance has no target".into()))?;
            cvp_coefficient_box(&b, t).and_then(|bounds| brute_cvp_within(&b, t, &bounds))
        }
    };
    let truth = match truth {
        Ok(t) => t,
        Err(e @ onecall_core::Error::BoxTooLarge { .. }) => {
            return Ok((format!("unverifiable: {e}\n"), Verdict::Unverifiable));
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = String::new();
    let _ = writeln!(out, "min_sq = {}", truth.min_sq);
    let _ = writeln!(out, "minimizers = {}", truth.solutions.len());
    let Some(rec) = record else {
        return Ok((out, Verdict::Verified));
    };
    let x = format::parse_vec(&rec.x)?;
    let claimed = format::parse_int(&rec.min_sq)?;
    let image = match problem {
        Problem::Svp => rec.v.as_deref(),
        Problem::Cvp => rec.w.as_deref(),
    }
    .ok_or_else(|| CliError::BadInput("result is missing its lattice vector".into()))?;
    let image = format::parse_vec(image)?;
    let ok = x.len() == b.dim()
        && onecall_core::mat_vec(&b, &x).ok().as_ref() == Some(&image)
        && claimed == truth.min_sq
        && truth.solutions.contains(&x);
    let verdict = if ok { Verdict::Verified } else { Verdict::Refuted };
    let _ = writeln!(out, "result {}", if ok { "verified" } else { "refuted" });
    Ok((out, verdict))
}

