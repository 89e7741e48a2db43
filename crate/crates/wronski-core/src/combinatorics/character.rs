use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::partition::{partitions_of, Partition};
use super::tableaux::factorial;
use crate::error::{Error, Result};

/// `χ^λ_μ` by border-strip removal on the bead set `{λ_i + d - i}`.
pub fn character(lam: &Partition, mu: &Partition) -> Result<i64> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch { expected: lam.size(), found: mu.size() });
    }
    let d = lam.len();
    let beads: u128 = (0..d).fold(0, |m, i| m | 1u128 << (lam.part(i) + d - 1 - i));
    let mut memo = BTreeMap::new();
    Ok(strip(beads, mu.parts(), &mut memo))
}

fn strip(beads: u128, parts: &[usize], memo: &mut BTreeMap<(u128, usize), i64>) -> i64 {
    let Some((&r, rest)) = parts.split_first() else {
        return 1;
    };
    if let Some(&v) = memo.get(&(beads, parts.len())) {
        return v;
    }
    let mut total = 0;
    let mut b = beads;
    while b != 0 {
        let pos = b.trailing_zeros() as usize;
        b &= b - 1;
        if pos < r || beads & (1u128 << (pos - r)) != 0 {
            continue;
        }
        let between = beads & ((1u128 << pos) - 1) & !((1u128 << (pos - r + 1)) - 1);
        let sign = if between.count_ones() % 2 == 0 { 1 } else { -1 };
        let moved = (beads & !(1u128 << pos)) | 1u128 << (pos - r);
        total += sign * strip(moved, rest, memo);
    }
    memo.insert((beads, parts.len()), total);
    total
}

/// `z_μ = Π_i i^{m_i} m_i!`, the order of the centralizer of a permutation of type `μ`.
pub fn centralizer_size(mu: &Partition) -> BigInt {
    mu.multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigInt::from(1), |acc, (i, &m)| acc * BigInt::from(i).pow(m as u32) * factorial(m))
}

/// Number of permutations of cycle type `μ`.
pub fn class_size(mu: &Partition) -> BigInt {
    factorial(mu.size()) / centralizer_size(mu)
}

/// The full character table of `S_k` for each `k ≤ n`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    values: BTreeMap<(Partition, Partition), i64>,
}

impl CharacterTable {
    pub fn up_to(n: usize) -> Self {
        let mut values = BTreeMap::new();
        for k in 0..=n {
            let ps = partitions_of(k, None, None);
            for lam in &ps {
                for mu in &ps {
                    values.insert((lam.clone(), mu.clone()), character(lam, mu).expect("same size"));
                }
            }
        }
        CharacterTable { values }
    }

    /// `χ^λ_μ`, or `None` when the sizes differ or exceed the table.
    pub fn get(&self, lam: &Partition, mu: &Partition) -> Option<i64> {
        self.values.get(&(lam.clone(), mu.clone())).copied()
    }

    pub fn row(&self, lam: &Partition) -> Vec<(Partition, i64)> {
        partitions_of(lam.size(), None, None)
            .into_iter()
            .filter_map(|mu| self.get(lam, &mu).map(|v| (mu, v)))
            .collect()
    }
}
