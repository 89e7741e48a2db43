use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::matrix::Matrix;
use crate::scalar::Rational;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `f^λ` from `f^λ/|λ|! = Π_{i<j}(ℓ_i - ℓ_j) / Π ℓ_i!` with `ℓ_i = λ_i - i + d`.
pub fn syt_count(lam: &Partition) -> u64 {
    let d = lam.len();
    let ell: Vec<i64> = (0..d).map(|i| (lam.part(i) + d) as i64 - (i as i64 + 1)).collect();
    let mut num = factorial(lam.size());
    for i in 0..d {
        for j in i + 1..d {
            num *= BigInt::from(ell[i] - ell[j]);
        }
    }
    let den = ell.iter().fold(BigInt::one(), |acc, &l| acc * factorial(l as usize));
    (num / den).to_u64().expect("f^λ fits in u64")
}

/// `f^{λ/μ} / |λ/μ|!` as the determinant of `1/(λ_i - i - μ_j + j)!`.
pub fn skew_syt_ratio(lam: &Partition, mu: &Partition) -> Result<Rational> {
    if !lam.contains(mu) {
        return Err(Error::NotContained { inner: mu.to_string_compact(), outer: lam.to_string_compact() });
    }
    let d = lam.len();
    if d == 0 {
        return Ok(Rational::one());
    }
    let m = Matrix::from_fn(d, d, |i, j| {
        let k = lam.part(i) as i64 - i as i64 - mu.part(j) as i64 + j as i64;
        if k < 0 {
            Rational::zero()
        } else {
            Rational::new(BigInt::one(), factorial(k as usize))
        }
    });
    Ok(determinant(&m))
}

/// Number of standard Young tableaux of shape `λ/μ` (`μ` empty when absent).
pub fn num_syt(lam: &Partition, mu: Option<&Partition>) -> Result<u64> {
    match mu {
        None => Ok(syt_count(lam)),
        Some(mu) if mu.is_empty() => Ok(syt_count(lam)),
        Some(mu) => {
            let r = skew_syt_ratio(lam, mu)? * Rational::from_integer(factorial(lam.size() - mu.size()));
            Ok(r.to_integer().to_u64().expect("skew count fits in u64"))
        }
    }
}

/// A standard Young tableau with entries `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
    /// `(row, col)` of each entry.
    position: Vec<(usize, usize)>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn position(&self, entry: usize) -> (usize, usize) {
        self.position[entry]
    }

    pub fn content(&self, entry: usize) -> i64 {
        let (r, c) = self.position[entry];
        c as i64 - r as i64
    }

    /// Rows read from bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Swap entries `a` and `b`; the result may fail to be standard.
    pub fn swapped(&self, a: usize, b: usize) -> Tableau {
        let mut t = self.clone();
        let (pa, pb) = (self.position[a], self.position[b]);
        t.rows[pa.0][pa.1] = b;
        t.rows[pb.0][pb.1] = a;
        t.position[a] = pb;
        t.position[b] = pa;
        t
    }
}

/// Standard tableaux of shape `ν`, sorted lexicographically by reading word.
pub fn standard_tableaux(nu: &Partition) -> Vec<Tableau> {
    let n = nu.size();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); nu.len()];
    let mut position = vec![(0, 0); n];
    grow(nu, 0, &mut rows, &mut position, &mut out);
    out.sort_by_key(|t| t.reading_word());
    out
}

fn grow(
    nu: &Partition,
    next: usize,
    rows: &mut Vec<Vec<usize>>,
    position: &mut Vec<(usize, usize)>,
    out: &mut Vec<Tableau>,
) {
    if next == nu.size() {
        out.push(Tableau { rows: rows.clone(), position: position.clone() });
        return;
    }
    for r in 0..nu.len() {
        let c = rows[r].len();
        if c < nu.part(r) && (r == 0 || rows[r - 1].len() > c) {
            rows[r].push(next);
            position[next] = (r, c);
            grow(nu, next + 1, rows, position, out);
            rows[r].pop();
        }
    }
}
