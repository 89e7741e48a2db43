//! Partitions, tableaux, characters of symmetric groups and supported permutations.

mod character;
mod partition;
mod permutation;
mod subsets;
mod supported;
mod tableaux;
mod zfactor;

pub use character::{centralizer_size, character, class_size, CharacterTable};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use permutation::{Permutation, SjtWalk};
pub use subsets::{combinations, next_permutation, popcount, subset_masks};
pub use supported::{supported_permutations, SupportedPermutation, SupportedPermutations};
pub use tableaux::{
    binomial, factorial, num_syt, skew_syt_ratio, standard_tableaux, syt_count, Tableau,
};
pub use zfactor::{count_z_factorizations, z_factorization_table};
