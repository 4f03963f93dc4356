//! Exact Fincke–Pohst enumeration over rational Gram–Schmidt data.
//!
//! For a basis with GSO norms r_i and coefficients μ_ij, and a target given
//! in GSO coordinates τ, the squared distance of the lattice point with
//! coefficients y is Σ_i r_i (y_i + Σ_{j>i} μ_ji y_j − τ_i)². The search
//! fixes y from the last coordinate down and keeps every partial sum within
//! the current radius. All comparisons are exact.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{round_rational, IntegralGso, Rational};

pub(crate) struct Enumerator {
    norms: Vec<Rational>,
    mu: Vec<Vec<Rational>>,
    tau: Vec<Rational>,
}

/// Every coefficient vector attaining the minimum, plus that minimum.
pub(crate) struct Minimizers {
    pub value: Rational,
    pub points: Vec<Vec<BigInt>>,
}

struct Search<'a> {
    en: &'a Enumerator,
    exclude_zero: bool,
    best: Rational,
    points: Vec<Vec<BigInt>>,
    y: Vec<BigInt>,
}

impl Enumerator {
    /// `gram_target[i]` is <t, b_i> for the basis columns, or all zeros for
    /// the shortest-vector search.
    pub fn new(gso: &IntegralGso, gram_target: &[BigInt]) -> Self {
        let n = gso.d.len() - 1;
        let norms: Vec<Rational> = (0..n).map(|i| gso.norm_sq(i)).collect();
        let mu: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..i).map(|j| gso.mu(i, j)).collect())
            .collect();
        // <t, b*_i> = <t, b_i> - Σ_{j<i} μ_ij <t, b*_j>
        let mut proj: Vec<Rational> = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = Rational::from_integer(gram_target[i].clone());
            for j in 0..i {
                s -= &mu[i][j] * &proj[j];
            }
            proj.push(s);
        }
        let tau = proj.iter().zip(&norms).map(|(s, r)| s / r).collect();
        Enumerator { norms, mu, tau }
    }

    fn dim(&self) -> usize {
        self.norms.len()
    }

    fn center(&self, i: usize, y: &[BigInt]) -> Rational {
        let mut c = self.tau[i].clone();
        for j in i + 1..self.dim() {
            if !y[j].is_zero() {
                c -= &self.mu[j][i] * Rational::from_integer(y[j].clone());
            }
        }
        c
    }

    /// Nearest-plane (Babai) coefficients for the target.
    pub fn babai(&self) -> Vec<BigInt> {
        let n = self.dim();
        let mut y = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            y[i] = round_rational(&self.center(i, &y));
        }
        y
    }

    /// All coefficient vectors minimizing the distance, searching within
    /// squared radius `radius` (inclusive). With `exclude_zero` the zero
    /// vector is skipped. Returns `None` if nothing lies within the radius.
    pub fn minimize(&self, radius: Rational, exclude_zero: bool) -> Option<Minimizers> {
        let mut s = Search {
            en: self,
            exclude_zero,
            best: radius,
            points: Vec::new(),
            y: vec![BigInt::zero(); self.dim()],
        };
        s.descend(self.dim(), Rational::zero());
        if s.points.is_empty() {
            return None;
        }
        Some(Minimizers {
            value: s.best,
            points: s.points,
        })
    }
}

impl Search<'_> {
    /// Enumerates coordinate `level - 1` given the coordinates above it.
    fn descend(&mut self, level: usize, partial: Rational) {
        let i = level - 1;
        let c = self.en.center(i, &self.y);
        let start = c.floor().to_integer();
        // the feasible set is an interval around c: walk down, then up
        for step in [-1i8, 1] {
            let mut x = if step < 0 { start.clone() } else { &start + 1 };
            loop {
                let diff = Rational::from_integer(x.clone()) - &c;
                let value = &partial + &self.en.norms[i] * &diff * &diff;
                if value > self.best {
                    break;
                }
                self.y[i] = x.clone();
                if i == 0 {
                    self.visit(value);
                } else {
                    self.descend(i, value);
                }
                if step < 0 {
                    x -= BigInt::one();
                } else {
                    x += BigInt::one();
                }
            }
        }
        self.y[i] = BigInt::zero();
    }

    fn visit(&mut self, value: Rational) {
        if self.exclude_zero && self.y.iter().all(Zero::is_zero) {
            return;
        }
        if value < self.best {
            self.best = value;
            self.points.clear();
        }
        self.points.push(self.y.clone());
    }
}
