//! Exact integer and rational linear algebra.
//!
//! Matrices are square and store their columns contiguously, since lattice
//! generators are the columns of a basis. Every quantity is exact; squared
//! norms are carried as integers and square roots are never taken.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Integer vector of lattice coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigVec(pub Vec<BigInt>);

impl BigVec {
    pub fn zeros(n: usize) -> Self {
        BigVec(vec![BigInt::zero(); n])
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        BigVec(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    pub fn dot(&self, other: &BigVec) -> Result<BigInt> {
        check_len(self.len(), other.len())?;
        Ok(dot(&self.0, &other.0))
    }

    pub fn sub(&self, other: &BigVec) -> Result<BigVec> {
        check_len(self.len(), other.len())?;
        Ok(BigVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scaled(&self, factor: &BigInt) -> BigVec {
        BigVec(self.0.iter().map(|a| a * factor).collect())
    }

    /// Flips the sign so the first nonzero entry is positive.
    pub fn normalize_sign(&mut self) {
        if let Some(first) = self.0.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                for v in &mut self.0 {
                    *v = -&*v;
                }
            }
        }
    }

    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|v| v.abs()).max().unwrap_or_default()
    }
}

impl From<Vec<BigInt>> for BigVec {
    fn from(v: Vec<BigInt>) -> Self {
        BigVec(v)
    }
}

impl Index<usize> for BigVec {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl fmt::Display for BigVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Square integer matrix whose columns generate a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigMat {
    cols: Vec<Vec<BigInt>>,
}

impl BigMat {
    /// Builds a matrix from its rows: `rows[i][j]` is the entry b_ij.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let mut cols = vec![Vec::with_capacity(n); n];
        for row in rows {
            for (j, v) in row.into_iter().enumerate() {
                cols[j].push(v);
            }
        }
        Ok(BigMat { cols })
    }

    pub fn from_columns(cols: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = cols.len();
        if n == 0 || cols.iter().any(|c| c.len() != n) {
            return Err(Error::NotSquare);
        }
        Ok(BigMat { cols })
    }

    /// Convenience for small literal matrices, given row by row.
    ///
    /// Panics if the rows do not form a non-empty square matrix.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_rows(rows).expect("rows must form a square matrix")
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| (0..n).map(|i| BigInt::from((i == j) as u8)).collect())
            .collect();
        BigMat { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.cols[j][i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.cols[j][i] = value;
    }

    pub fn column(&self, j: usize) -> &[BigInt] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.cols.iter().map(|c| c[i].clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim()).map(|i| self.row(i)).collect()
    }

    /// M(B): the largest absolute value among the entries.
    pub fn max_abs_entry(&self) -> BigInt {
        self.cols
            .iter()
            .flatten()
            .map(|v| v.abs())
            .max()
            .unwrap_or_default()
    }

    pub fn mul(&self, rhs: &BigMat) -> Result<BigMat> {
        check_len(self.dim(), rhs.dim())?;
        let cols = rhs
            .cols
            .iter()
            .map(|c| mat_vec_slice(self, c))
            .collect();
        Ok(BigMat { cols })
    }

    pub fn transpose(&self) -> BigMat {
        BigMat { cols: self.rows() }
    }

    pub(crate) fn columns_mut(&mut self) -> &mut [Vec<BigInt>] {
        &mut self.cols
    }
}

impl fmt::Display for BigMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", BigVec(self.row(i)))?;
        }
        f.write_str("]")
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mat_vec_slice(b: &BigMat, x: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); b.dim()];
    for (col, xj) in b.cols.iter().zip(x) {
        if xj.is_zero() {
            continue;
        }
        for (o, bij) in out.iter_mut().zip(col) {
            *o += bij * xj;
        }
    }
    out
}

/// The lattice vector Bx = Σ x_j b_j.
pub fn mat_vec(b: &BigMat, x: &BigVec) -> Result<BigVec> {
    check_len(b.dim(), x.len())?;
    Ok(BigVec(mat_vec_slice(b, &x.0)))
}

/// Σ v_i², exact.
pub fn norm_sq(v: &BigVec) -> BigInt {
    norm_sq_slice(&v.0)
}

pub(crate) fn norm_sq_slice(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(b: &BigMat) -> BigInt {
    let n = b.dim();
    let mut a = b.rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // Sylvester's identity guarantees exact division.
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Cofactor C_ij = (-1)^(i+j) det(minor without row i and column j).
pub fn cofactor(b: &BigMat, i: usize, j: usize) -> BigInt {
    let n = b.dim();
    if n == 1 {
        return BigInt::one();
    }
    let rows: Vec<Vec<BigInt>> = (0..n)
        .filter(|&r| r != i)
        .map(|r| {
            (0..n)
                .filter(|&c| c != j)
                .map(|c| b.get(r, c).clone())
                .collect()
        })
        .collect();
    let minor = BigMat::from_rows(rows).expect("minor of a square matrix is square");
    let d = det_bareiss(&minor);
    if (i + j).is_odd() {
        -d
    } else {
        d
    }
}

/// adj(B), so that B · adj(B) = det(B) · I.
pub fn adjugate(b: &BigMat) -> BigMat {
    let n = b.dim();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| cofactor(b, j, i)).collect())
        .collect();
    BigMat::from_rows(rows).expect("adjugate is square")
}

/// Exact Gram–Schmidt data of the columns: orthogonal vectors b*_i and the
/// coefficients μ_ij = <b_i, b*_j> / <b*_j, b*_j> for j < i (μ_ii = 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSchmidt {
    pub ortho: Vec<Vec<Rational>>,
    pub mu: Vec<Vec<Rational>>,
}

impl GramSchmidt {
    /// ‖b*_i‖² for every i.
    pub fn norms_sq(&self) -> Vec<Rational> {
        self.ortho
            .iter()
            .map(|v| v.iter().map(|x| x * x).sum())
            .collect()
    }
}

pub fn gram_schmidt(b: &BigMat) -> Result<GramSchmidt> {
    let n = b.dim();
    let mut ortho: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut norms: Vec<Rational> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let bi: Vec<Rational> = b.column(i).iter().cloned().map(Rational::from_integer).collect();
        let mut v = bi.clone();
        for j in 0..i {
            let num: Rational = bi.iter().zip(&ortho[j]).map(|(x, y)| x * y).sum();
            let m = num / &norms[j];
            for (vk, ok) in v.iter_mut().zip(&ortho[j]) {
                *vk -= &m * ok;
            }
            mu[i][j] = m;
        }
        mu[i][i] = Rational::one();
        let nv: Rational = v.iter().map(|x| x * x).sum();
        if nv.is_zero() {
            return Err(Error::SingularBasis);
        }
        ortho.push(v);
        norms.push(nv);
    }
    Ok(GramSchmidt { ortho, mu })
}

/// Integral Gram–Schmidt representation: `d[i]` is the Gram determinant of
/// the first i columns (`d[0] = 1`) and `lambda[i][j] = d[j+1] μ_ij` for j < i.
/// All entries are integers whenever the basis is integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntegralGso {
    pub d: Vec<BigInt>,
    pub lambda: Vec<Vec<BigInt>>,
}

impl IntegralGso {
    pub fn new(b: &BigMat) -> Result<Self> {
        let n = b.dim();
        let mut d = vec![BigInt::zero(); n + 1];
        d[0] = BigInt::one();
        let mut lambda = vec![vec![BigInt::zero(); n]; n];
        for k in 0..n {
            for j in 0..=k {
                let mut u = dot(b.column(k), b.column(j));
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lambda[k][i] * &lambda[j][i]) / &d[i];
                }
                if j < k {
                    lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::SingularBasis);
                    }
                    d[k + 1] = u;
                }
            }
        }
        Ok(IntegralGso { d, lambda })
    }

    /// ‖b*_i‖² = d[i+1] / d[i].
    pub fn norm_sq(&self, i: usize) -> Rational {
        Rational::new(self.d[i + 1].clone(), self.d[i].clone())
    }

    /// μ_ij for j < i.
    pub fn mu(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.lambda[i][j].clone(), self.d[j + 1].clone())
    }
}

/// Nearest integer to `q`, halves rounded up.
pub(crate) fn round_rational(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    (q.numer() * &two + q.denom()).div_floor(&(q.denom() * &two))
}
