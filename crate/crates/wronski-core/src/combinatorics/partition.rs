use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An integer partition, stored without trailing zeros.
///
/// The derived order is lexicographic on parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates weak decrease; trailing zeros are dropped.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The one-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        if k == 0 { Self::empty() } else { Partition { parts: vec![k] } }
    }

    /// The one-column partition `1^k`.
    pub fn column(k: usize) -> Self {
        Partition { parts: vec![1; k] }
    }

    /// The rectangle with `rows` rows of length `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 { Self::empty() } else { Partition { parts: vec![cols; rows] } }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Whether `inner ⊆ self` as diagrams.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner.len() <= self.len() && inner.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Self {
        let w = self.part(0);
        Partition { parts: (0..w).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect() }
    }

    /// 1-based increasing index set `(i_1 < ... < i_d)` with `λ_k = i_{d+1-k} - (d+1-k)`.
    pub fn index_set(&self, d: usize) -> Option<Vec<usize>> {
        if self.len() > d {
            return None;
        }
        Some((1..=d).map(|j| self.part(d - j) + j).collect())
    }

    /// Inverse of [`Partition::index_set`]; `set` must be strictly increasing and 1-based.
    pub fn from_index_set(set: &[usize]) -> Self {
        let d = set.len();
        let parts = (0..d).map(|k| set[d - 1 - k] - (d - k)).collect::<Vec<_>>();
        Partition::new(parts).expect("strictly increasing index set")
    }

    /// Complement inside the `rows × cols` rectangle, read from the opposite corner.
    pub fn complement(&self, rows: usize, cols: usize) -> Option<Self> {
        if self.len() > rows || self.part(0) > cols {
            return None;
        }
        Partition::new((0..rows).map(|i| cols - self.part(rows - 1 - i)).collect::<Vec<_>>()).ok()
    }

    /// `Some((rows, cols))` when the diagram is a rectangle.
    pub fn rectangle_shape(&self) -> Option<(usize, usize)> {
        let w = self.part(0);
        self.parts.iter().all(|&p| p == w).then_some((self.len(), w))
    }

    /// The parts larger than one, and the number of ones.
    pub fn split_ones(&self) -> (Partition, usize) {
        let ones = self.parts.iter().filter(|&&p| p == 1).count();
        (Partition { parts: self.parts[..self.len() - ones].to_vec() }, ones)
    }

    /// Append `k` parts equal to one.
    pub fn with_ones(&self, k: usize) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(core::iter::repeat_n(1, k));
        Partition { parts }
    }

    /// Union of multisets of parts.
    pub fn union(&self, other: &Partition) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::from_unsorted(parts)
    }

    /// Multiplicity of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Cells `(row, col)` of the diagram, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
    }

    pub fn to_string_compact(&self) -> String {
        let strs: Vec<String> = self.parts.iter().map(|p| format!("{p}")).collect();
        format!("({})", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_compact())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_compact())
    }
}

/// Partitions of `k`, in decreasing lexicographic order, with optional length
/// bound and containing shape.
pub fn partitions_of(k: usize, max_length: Option<usize>, inside: Option<&Partition>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let max_len = max_length.unwrap_or(usize::MAX);
    fill(k, k, max_len, inside, &mut cur, &mut out);
    out
}

fn fill(
    rest: usize,
    cap: usize,
    max_len: usize,
    inside: Option<&Partition>,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    if cur.len() >= max_len {
        return;
    }
    let mut top = cap.min(rest);
    if let Some(outer) = inside {
        top = top.min(outer.part(cur.len()));
    }
    for p in (1..=top).rev() {
        cur.push(p);
        fill(rest - p, p, max_len, inside, cur, out);
        cur.pop();
    }
}

/// All partitions of size at most `n`, grouped by size.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(|k| partitions_of(k, None, None)).collect()
}
