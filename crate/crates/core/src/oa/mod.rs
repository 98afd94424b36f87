//! Orthogonal arrays and their combinatorial checks.

mod array;
mod distance;
mod feasibility;
mod partition;
mod strength;

pub use array::{construct_strength1, kronecker_sum_expand, kronecker_sum_scalar, OrthogonalArray, SymbolArray};
pub use distance::{
    hamming, is_irredundant, is_irredundant_by_deletion, min_distance_at_least, min_hamming_distance, MinDistance,
};
pub use feasibility::{
    block_count_exclusion, case_a_block_test, feasibility_bound, ExistenceFact, ExistenceFacts, FeasibilityReport,
    FeasibilityVerdict, OaParams,
};
pub use partition::{verify_mixed_state_partition, OrthogonalPartition, PartitionReport};
pub use strength::{max_strength, verify_strength};
