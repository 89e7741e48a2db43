use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;
use rand::Rng;

use crate::combinatorics::{combinations, Partition};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationTerm {
    pub coeff: i64,
    pub first: Partition,
    pub second: Partition,
}

/// A quadratic relation `Σ coeff · Δ^first · Δ^second = 0`, with the index
/// sets it was generated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerRelation {
    pub terms: Vec<RelationTerm>,
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationFamily {
    All,
    SingleColumn,
    SingleRow,
}

/// Sort a 1-based index tuple, returning the sign of the sorting permutation,
/// or `None` on a repeated index.
fn sort_with_sign(mut v: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// The relation `Σ_k Δ_{I-k} Δ_{J+k} = 0` for strictly increasing 1-based
/// `i_set` (length `d+1`) and `j_set` (length `d-1`), in canonical form:
/// identical monomials merged, content divided out, first coefficient positive.
/// `None` when every term cancels.
pub fn relation_from_index_sets(i_set: &[usize], j_set: &[usize]) -> Option<PluckerRelation> {
    let d = i_set.len().checked_sub(1)?;
    debug_assert_eq!(j_set.len() + 1, d);
    let mut acc: BTreeMap<(Partition, Partition), i64> = BTreeMap::new();
    for (s, &k) in i_set.iter().enumerate() {
        let left: Vec<usize> = i_set.iter().copied().filter(|&i| i != k).collect();
        let left_sign = if (d - s) % 2 == 0 { 1 } else { -1 };
        let mut right = j_set.to_vec();
        right.push(k);
        let Some((right_sign, right)) = sort_with_sign(right) else { continue };
        let a = Partition::from_index_set(&left);
        let b = Partition::from_index_set(&right);
        let key = if a <= b { (a, b) } else { (b, a) };
        *acc.entry(key).or_insert(0) += left_sign * right_sign;
    }
    acc.retain(|_, c| *c != 0);
    let g = acc.values().fold(0i64, |g, c| g.gcd(c));
    if g == 0 {
        return None;
    }
    let lead_sign = acc.values().next().map_or(1, |c| c.signum());
    let terms = acc
        .into_iter()
        .map(|((first, second), c)| RelationTerm { coeff: c / g * lead_sign, first, second })
        .collect();
    Some(PluckerRelation { terms, i_set: i_set.to_vec(), j_set: j_set.to_vec() })
}

/// Plücker relations of `Gr(d, m)`, deduplicated by their canonical term list
/// and kept in order of first appearance over sorted `(I, J)`.
pub fn plucker_relations(d: usize, m: usize, family: RelationFamily) -> Vec<PluckerRelation> {
    if d == 0 || d + 1 > m {
        return Vec::new();
    }
    let i_sets: Vec<Vec<usize>> = match family {
        RelationFamily::SingleColumn => alloc::vec![(1..=d + 1).collect()],
        _ => combinations(m, d + 1).map(to_one_based).collect(),
    };
    let j_sets: Vec<Vec<usize>> = match family {
        RelationFamily::SingleRow => alloc::vec![(1..d).collect()],
        _ => combinations(m, d - 1).map(to_one_based).collect(),
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in &i_sets {
        for j in &j_sets {
            if let Some(rel) = relation_from_index_sets(i, j) {
                if seen.insert(rel.terms.clone()) {
                    out.push(rel);
                }
            }
        }
    }
    out
}

/// Up to `count` distinct nontrivial relations drawn from random `(I, J)`.
pub fn sample_relations<R: Rng>(d: usize, m: usize, count: usize, rng: &mut R) -> Vec<PluckerRelation> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    if d == 0 || d + 1 > m {
        return out;
    }
    let mut attempts = 0usize;
    while out.len() < count && attempts < count.saturating_mul(50) {
        attempts += 1;
        let i = random_subset(m, d + 1, rng);
        let j = random_subset(m, d - 1, rng);
        if let Some(rel) = relation_from_index_sets(&i, &j) {
            if seen.insert(rel.terms.clone()) {
                out.push(rel);
            }
        }
    }
    out
}

fn to_one_based(v: Vec<usize>) -> Vec<usize> {
    v.into_iter().map(|i| i + 1).collect()
}

fn random_subset<R: Rng>(m: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=m).collect();
    for i in 0..k {
        let j = rng.gen_range(i..m);
        pool.swap(i, j);
    }
    let mut out = pool[..k].to_vec();
    out.sort_unstable();
    out
}

impl PluckerRelation {
    /// Evaluate on scalar coordinates.
    pub fn evaluate<F: Scalar>(&self, coord: impl Fn(&Partition) -> F) -> F {
        let mut acc = F::zero();
        for t in &self.terms {
            let v = coord(&t.first).mul_ref(&coord(&t.second));
            acc.mul_add_assign(&F::from_i64(t.coeff), &v);
        }
        acc
    }

    /// `|first| + |second|`, the same for every term.
    pub fn weight(&self) -> usize {
        self.terms.first().map_or(0, |t| t.first.size() + t.second.size())
    }

    /// Partitions appearing in the relation.
    pub fn partitions(&self) -> impl Iterator<Item = &Partition> {
        self.terms.iter().flat_map(|t| [&t.first, &t.second])
    }
}
