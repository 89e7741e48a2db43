use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::partition::Partition;
use super::permutation::Permutation;
use super::subsets::next_permutation;

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// Tally of all factorizations `θ = σ ∘ π` with `σ ∈ S_X`, `π ∈ S_Y`,
/// `X ∪ Y = [n]` and `X ∩ Y = Z`, keyed by `(cyc(σ_X), cyc(π_Y))`.
///
/// `z` holds 0-based points.
pub fn z_factorization_table(theta: &Permutation, z: &[usize]) -> BTreeMap<(Partition, Partition), u64> {
    let n = theta.n();
    assert!(n <= 64, "supports are stored as 64-bit masks");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let zmask = mask_of(z);
    let free = full & !zmask;
    let mut table = BTreeMap::new();
    let mut sub = 0u64;
    loop {
        let xmask = zmask | sub;
        let ymask = (full & !xmask) | zmask;
        let x: Vec<usize> = (0..n).filter(|i| xmask >> i & 1 == 1).collect();
        let mut arrangement = x.clone();
        loop {
            let mut images: Vec<usize> = (0..n).collect();
            for (src, dst) in x.iter().zip(&arrangement) {
                images[*src] = *dst;
            }
            let sigma = Permutation::new(images).expect("bijection");
            let pi = sigma.inverse().compose(theta);
            if pi.moved_mask() & !ymask == 0 {
                let key = (sigma.cycle_type_within(xmask), pi.cycle_type_within(ymask));
                *table.entry(key).or_insert(0) += 1;
            }
            if !next_permutation(&mut arrangement) {
                break;
            }
        }
        if sub == free {
            break;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
    table
}

/// Number of `Z`-factorizations of `θ` with cycle types `(λ, μ)`.
pub fn count_z_factorizations(theta: &Permutation, z: &[usize], lam: &Partition, mu: &Partition) -> u64 {
    if lam.size() + mu.size() != theta.n() + z.len() {
        return 0;
    }
    z_factorization_table(theta, z).get(&(lam.clone(), mu.clone())).copied().unwrap_or(0)
}
