//! On-disk JSON formats. Every integer that can exceed 64 bits is a decimal
//! string; matrices are written row by row (`basis[i][j]` is b_ij, and the
//! lattice is generated by the columns).

use num_bigint::BigInt;
use onecall_core::{BigMat, BigVec, ReductionParams};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub n: usize,
    pub basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Svp,
    Cvp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    Enum,
    Assisted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDigest {
    pub p: String,
    pub a: Vec<String>,
    #[serde(rename = "M1")]
    pub m1: String,
    #[serde(rename = "M2")]
    pub m2: String,
}

impl From<&ReductionParams> for ParamsDigest {
    fn from(p: &ReductionParams) -> Self {
        ParamsDigest {
            p: p.p.to_string(),
            a: p.exponents.iter().map(u64::to_string).collect(),
            m1: p.m1.to_string(),
            m2: p.m2.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub problem: Problem,
    pub x: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<String>>,
    pub min_sq: String,
    pub oracle: OracleKind,
    pub oracle_calls: u64,
    pub params_digest: ParamsDigest,
    pub verified: bool,
}

/// Parses an optionally negative decimal integer, digits only.
pub fn parse_int(s: &str) -> Result<BigInt, CliError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::BadInput(format!("not a decimal integer: {s:?}")));
    }
    s.parse()
        .map_err(|_| CliError::BadInput(format!("not a decimal integer: {s:?}")))
}

pub fn to_strings(v: &BigVec) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

pub fn parse_vec(v: &[String]) -> Result<BigVec, CliError> {
    v.iter()
        .map(|s| parse_int(s))
        .collect::<Result<Vec<_>, _>>()
        .map(BigVec)
}

impl Instance {
    pub fn new(basis: &BigMat, target: Option<&BigVec>, seed: Option<u64>) -> Self {
        Instance {
            n: basis.dim(),
            basis: basis
                .rows()
                .iter()
                .map(|r| r.iter().map(BigInt::to_string).collect())
                .collect(),
            target: target.map(to_strings),
            seed,
        }
    }

    /// The basis matrix; checks shape against `n` but not singularity.
    pub fn basis_matrix(&self) -> Result<BigMat, CliError> {
        if self.n == 0 || self.basis.len() != self.n || self.basis.iter().any(|r| r.len() != self.n) {
            return Err(CliError::BadInput(format!(
                "basis must be a {0}x{0} matrix",
                self.n
            )));
        }
        let rows = self
            .basis
            .iter()
            .map(|r| parse_vec(r).map(|v| v.0))
            .collect::<Result<Vec<_>, _>>()?;
        BigMat::from_rows(rows).map_err(|e| CliError::BadInput(e.to_string()))
    }

    pub fn target_vector(&self) -> Result<Option<BigVec>, CliError> {
        match &self.target {
            None => Ok(None),
            Some(t) if t.len() != self.n => Err(CliError::BadInput(format!(
                "target must have {} entries, found {}",
                self.n,
                t.len()
            ))),
            Some(t) => parse_vec(t).map(Some),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::BadInput(format!("invalid instance: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instances always serialize");
        s.push('\n');
        s
    }
}

impl ResultRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::BadInput(format!("invalid result: {e}")))
    }
}
