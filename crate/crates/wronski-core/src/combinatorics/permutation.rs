use alloc::format;
use alloc::vec::Vec;

use super::partition::Partition;
use crate::error::{Error, Result};

/// A permutation of `0..n`, stored by its images.
///
/// Composition follows functions: `a.compose(&b)` maps `i` to `a(b(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        if one_line.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{one_line:?}")));
        }
        Self::new(one_line.iter().map(|&i| i - 1).collect())
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// Transposition of `a` and `b` (0-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// The cycle `c[0] -> c[1] -> ... -> c[0]`.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for k in 0..c.len() {
            p.images[c[k]] = c[(k + 1) % c.len()];
        }
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Right multiplication by the adjacent transposition `s_i = (i, i+1)`.
    pub fn swap_positions(&mut self, i: usize) {
        self.images.swap(i, i + 1);
    }

    /// Bitmask of non-fixed points.
    pub fn moved_mask(&self) -> u64 {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, j)| i != *j)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.n()];
        let mut lens = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lens.push(len);
        }
        lens
    }

    /// Cycle type on all of `0..n`, fixed points included.
    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_lengths())
    }

    /// Cycle type of the non-fixed points only.
    pub fn moved_cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_lengths().into_iter().filter(|&l| l > 1).collect())
    }

    /// Cycle type within a support set `x` containing every moved point; the
    /// fixed points of `x` count as 1-cycles.
    pub fn cycle_type_within(&self, x: u64) -> Partition {
        debug_assert_eq!(self.moved_mask() & !x, 0);
        let moved = self.moved_mask();
        self.moved_cycle_type().with_ones((x & !moved).count_ones() as usize)
    }

    pub fn sign(&self) -> i64 {
        if (self.n() - self.cycle_lengths().len()) % 2 == 0 { 1 } else { -1 }
    }

    /// Word `w` with `self = s_{w[0]} ∘ s_{w[1]} ∘ ...` of minimal length.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.images.clone();
        let mut word = Vec::new();
        let mut sorted = false;
        while !sorted {
            sorted = true;
            for j in 0..cur.len().saturating_sub(1) {
                if cur[j] > cur[j + 1] {
                    cur.swap(j, j + 1);
                    word.push(j);
                    sorted = false;
                }
            }
        }
        word.reverse();
        word
    }
}

/// Steinhaus–Johnson–Trotter walk through `S_n` by adjacent swaps.
///
/// Each call to [`SjtWalk::next_swap`] returns `i` such that the next
/// permutation is the current one composed on the right with `s_i`.
pub struct SjtWalk {
    perm: Vec<usize>,
    pos: Vec<usize>,
    dir: Vec<i8>,
}

impl SjtWalk {
    pub fn new(n: usize) -> Self {
        SjtWalk { perm: (0..n).collect(), pos: (0..n).collect(), dir: alloc::vec![-1; n] }
    }

    pub fn current(&self) -> &[usize] {
        &self.perm
    }

    pub fn next_swap(&mut self) -> Option<usize> {
        let n = self.perm.len();
        let mut mobile = None;
        for v in (0..n).rev() {
            let p = self.pos[v];
            let q = p as isize + self.dir[v] as isize;
            if q >= 0 && (q as usize) < n && self.perm[q as usize] < v {
                mobile = Some((v, p, q as usize));
                break;
            }
        }
        let (v, p, q) = mobile?;
        let w = self.perm[q];
        self.perm.swap(p, q);
        self.pos[v] = q;
        self.pos[w] = p;
        for u in v + 1..n {
            self.dir[u] = -self.dir[u];
        }
        Some(p.min(q))
    }
}
