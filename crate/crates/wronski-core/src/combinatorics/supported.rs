use alloc::vec::Vec;

use super::partition::Partition;
use super::permutation::Permutation;
use super::subsets::{combinations, next_permutation};

/// A permutation together with a set `X` containing all of its moved points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportedPermutation {
    pub perm: Permutation,
    /// Bitmask of `X`.
    pub support: u64,
    /// Cycle type of `σ` restricted to `X`.
    pub cycle_type: Partition,
}

impl SupportedPermutation {
    pub fn support_set(&self) -> Vec<usize> {
        (0..self.perm.n()).filter(|i| self.support >> i & 1 == 1).collect()
    }
}

/// Streams every `(σ, X)` with `|X| = k` and `σ ∈ S_X`: subsets in
/// lexicographic order, then permutations of each subset in lexicographic order.
pub struct SupportedPermutations {
    n: usize,
    subsets: alloc::boxed::Box<dyn Iterator<Item = Vec<usize>>>,
    current: Option<(Vec<usize>, Vec<usize>)>,
}

pub fn supported_permutations(n: usize, k: usize) -> SupportedPermutations {
    assert!(n <= 64, "supports are stored as 64-bit masks");
    SupportedPermutations { n, subsets: alloc::boxed::Box::new(combinations(n, k)), current: None }
}

impl Iterator for SupportedPermutations {
    type Item = SupportedPermutation;

    fn next(&mut self) -> Option<SupportedPermutation> {
        if self.current.is_none() {
            let x = self.subsets.next()?;
            self.current = Some((x.clone(), x));
        }
        let (x, arrangement) = self.current.as_mut().expect("set above");
        let mut images: Vec<usize> = (0..self.n).collect();
        for (src, dst) in x.iter().zip(arrangement.iter()) {
            images[*src] = *dst;
        }
        let support = x.iter().fold(0u64, |m, &i| m | 1 << i);
        let perm = Permutation::new(images).expect("bijection by construction");
        let cycle_type = perm.cycle_type_within(support);
        if !next_permutation(arrangement) {
            self.current = None;
        }
        Some(SupportedPermutation { perm, support, cycle_type })
    }
}
